#include "tournament/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "tournament/error.hpp"
#include "tournament/numeric.hpp"

namespace tourney {

namespace {

void check_n(int n) {
    if (n < 2) throw ConfigError("cutoff analysis needs n >= 2");
}

double cutoff_bracket_lo() { return 0.5; }
double cutoff_bracket_hi(int n) { return (n + 1.0) / (2.0 * n); }

}  // namespace

double cap_bid_win_prob(int n, double v) {
    check_n(n);
    double sum = 1.0;  // j = n - 1 term of the Horner recursion
    for (int j = 1; j < n; ++j) sum = 1.0 + v * sum;
    return sum / n;
}

double cap_bid_win_prob_binomial(int n, double v) {
    check_n(n);
    const double u = 1.0 - v;
    double coeff = 1.0;  // C(n-1, j)
    double sum = 0.0;
    for (int j = 0; j <= n - 1; ++j) {
        sum += coeff * std::pow(v, n - 1 - j) * std::pow(u, j) / (1.0 + j);
        coeff *= static_cast<double>(n - 1 - j) / (j + 1.0);
    }
    return sum;
}

double linear_bid_payoff(int n, double v) {
    check_n(n);
    return std::pow(v, n + 1) * 2.0 * n / ((n + 1.0) * (n + 1.0));
}

double cap_bid_payoff(int n, double v) {
    check_n(n);
    return (v - 0.5) * cap_bid_win_prob(n, v);
}

CutoffResult solve_cutoff(int n) {
    check_n(n);
    const double lo = cutoff_bracket_lo();
    const double hi = cutoff_bracket_hi(n);
    const auto diff = [n](double v) {
        return linear_bid_payoff(n, v) - cap_bid_payoff(n, v);
    };

    CutoffResult result;
    result.n = n;
    result.bracket_lo = lo;
    result.bracket_hi = hi;

    constexpr int kGridCells = 10000;
    const double step = (hi - lo) / kGridCells;
    double x_prev = lo;
    double d_prev = diff(lo);
    double cell_lo = 0.0, cell_hi = 0.0;
    for (int i = 1; i <= kGridCells; ++i) {
        const double x = (i == kGridCells) ? hi : lo + i * step;
        const double d = diff(x);
        if ((d_prev > 0.0 && d <= 0.0) || (d_prev < 0.0 && d >= 0.0) || d_prev == 0.0) {
            result.sign_changes.push_back(x_prev);
            if (result.sign_changes.size() == 1) {
                cell_lo = x_prev;
                cell_hi = x;
            }
        }
        x_prev = x;
        d_prev = d;
    }
    if (result.sign_changes.empty()) {
        throw NumericalFault("cutoff scan found no indifference point for n = " +
                             std::to_string(n));
    }

    result.v_hat = bisect_root(diff, cell_lo, cell_hi, 1e-12);
    result.residual = std::abs(diff(result.v_hat));
    if (result.residual > 1e-10) {
        throw NumericalFault("cutoff residual above tolerance for n = " +
                             std::to_string(n));
    }
    if (!(result.v_hat > lo && result.v_hat < hi)) {
        throw NumericalFault("cutoff escaped its bracket for n = " + std::to_string(n));
    }
    return result;
}

double interim_payoff_symmetric(double b, double v, int n, double cutoff, double cap) {
    check_n(n);
    if (!(cutoff > cutoff_bracket_lo() && cutoff < cutoff_bracket_hi(n))) {
        throw ConfigError("symmetric payoff needs a cutoff strictly inside (1/2, (n+1)/(2n))");
    }
    if (!(cap > 1.0)) throw ConfigError("symmetric payoff needs a cap above 1");

    const double slope = 2.0 * n / (n + 1.0);
    const double x = std::clamp(b, 0.0, cap);
    if (x == cap) {
        return cap_bid_win_prob(n, cutoff) * (v - 0.5);
    }
    if (x <= slope * cutoff) {
        return std::pow(x / slope, n - 1) * (v * x - 0.5 * x * x);
    }
    const double stage1 = std::pow(cutoff, n - 1);
    if (x < 1.0) {
        return stage1 * (v * x - 0.5 * x * x);
    }
    return stage1 * (v - 0.5);
}

double interim_payoff_asymmetric(double b, double v, int n, double w_bar) {
    check_n(n);
    if (!(w_bar > 2.0)) {
        throw ConfigError("asymmetric payoff needs the entrant mean w_bar/2 above 1");
    }
    const double slope = 2.0 * n / (n + 1.0);
    const double x = std::max(b, 0.0);
    if (x >= w_bar) {
        return v - 0.5 * w_bar;
    }
    const double gain = (v * x - 0.5 * x * x) / w_bar;
    if (x <= slope) {
        return std::pow(x / slope, n - 1) * gain;
    }
    return gain;
}

}  // namespace tourney
