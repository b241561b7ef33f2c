#pragma once

#include <vector>

namespace tourney {

/// Probability of taking the first stage with a cap bid when all n - 1
/// rivals bid the cap above the cutoff type v and ties split uniformly:
///   (1/n) * sum over j in [0, n-1] of v^j.
double cap_bid_win_prob(int n, double v);

/// Same quantity written as the tie-lottery sum
///   sum over j of C(n-1, j) v^(n-1-j) (1-v)^j / (1+j).
/// Slower; kept as an independent cross-check of cap_bid_win_prob.
double cap_bid_win_prob_binomial(int n, double v);

/// Expected payoff of the cutoff type from the interior linear bid when
/// values are uniform(0, 1) on both sides: v^(n+1) * 2n / (n+1)^2.
double linear_bid_payoff(int n, double v);

/// Expected payoff of the cutoff type from bidding the cap:
///   (v - 1/2) * cap_bid_win_prob(n, v).
double cap_bid_payoff(int n, double v);

struct CutoffResult {
    int n = 0;
    double v_hat = 0.0;      // first indifference point inside the bracket
    double residual = 0.0;   // |linear_bid_payoff - cap_bid_payoff| at v_hat
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    /// Grid cells of the scan where linear-minus-cap payoff changes sign.
    /// The equilibrium cutoff is the first; more than one entry flags a
    /// bracket worth inspecting.
    std::vector<double> sign_changes;
};

/// Indifference cutoff of the symmetric commitment equilibrium: the smallest
/// root of linear_bid_payoff = cap_bid_payoff strictly inside
/// (1/2, (n+1)/(2n)). Scans a 10^4-point grid for the first sign change,
/// then bisects to 1e-12. Throws NumericalFault when no sign change exists
/// or the refined residual exceeds 1e-10.
CutoffResult solve_cutoff(int n);

/// Interim expected payoff of a first-stage bidder with value v bidding b
/// against n - 1 rivals on the symmetric commitment strategy with the given
/// cutoff and cap (uniform(0, 1) values on both sides). Bids above the cap
/// clamp to the cap. Four branches: below the rivals' linear range, inside
/// it, between the top linear bid and the cap, and exactly at the cap
/// (where the tie lottery applies).
double interim_payoff_symmetric(double b, double v, int n, double cutoff, double cap);

/// Interim expected payoff under asymmetric commitment: rivals bid linearly
/// with slope 2n/(n+1), the entrant value is uniform(0, w_bar) with
/// w_bar / 2 > 1. Three branches: inside the rivals' bid range, above it but
/// below w_bar, and at or above w_bar.
double interim_payoff_asymmetric(double b, double v, int n, double w_bar);

}  // namespace tourney
