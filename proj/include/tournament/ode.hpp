#pragma once

#include <vector>

#include "tournament/distribution.hpp"

namespace tourney {

/// Slope field of the commitment first-stage equilibrium bid when the
/// entrant's mean value exceeds the top first-stage value:
///   db/dv = (n-1) * f(v)/F(v) * G(b)/g(b) * (v - E[w | w <= b]) / (b - v).
double bid_ode_slope(double b, double v, int n, const ValueDistribution& f,
                     const ValueDistribution& g);

struct OdeSolution {
    int n = 0;
    double step = 0.0;    // realized step size
    double v_seed = 0.0;  // first knot, where the linear seed is applied
    std::vector<double> v;
    std::vector<double> b;

    double top_bid() const { return b.back(); }
};

/// Integrates the bid ODE with classical fixed-step RK4 from
/// v0 = 1e-4 * v_max, seeded on the asymptotic linear branch
/// b(v0) = 2n/(n+1) * v0, up to v_max. step <= 0 selects the default
/// (v_max - v0) / 1e4. Throws NumericalFault when the trajectory touches
/// the b = v singularity or exits the entrant's bid support.
OdeSolution solve_bid_ode(int n, const ValueDistribution& f,
                          const ValueDistribution& g, double step = 0.0);

/// Large-n limit of the commitment bid: the b solving
/// E[w | w <= b] = top_value. Throws NumericalFault when the entrant's mean
/// does not exceed top_value (no finite solution).
double solve_limit_bid(double top_value, const ValueDistribution& g);

/// Seller revenue in the large-n commitment limit, E[min(limit_bid, w)].
double limit_revenue_asymmetric(double limit_bid, const ValueDistribution& g);

struct LimitAnalysis {
    double limit_bid = 0.0;
    double revenue_commitment = 0.0;
    /// Without commitment the second-price outcome converges to the top
    /// first-stage value.
    double revenue_no_commitment = 0.0;
};

LimitAnalysis limit_analysis(double top_value, const ValueDistribution& g);

/// Consistency check of a numeric bid path: the winner's expected
/// second-stage surplus at the top value computed directly,
///   F(v_max)^(n-1) * integral over [0, b(v_max)] of (v_max - x) dG(x),
/// against the envelope integral
///   integral over [0, v_max] of F(v)^(n-1) G(b(v)) dv.
/// Returns the absolute difference.
double envelope_residual(int n, const ValueDistribution& f,
                         const ValueDistribution& g, const OdeSolution& sol);

}  // namespace tourney
