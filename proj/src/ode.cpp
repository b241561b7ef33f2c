#include "tournament/ode.hpp"

#include <cmath>
#include <limits>

#include "tournament/error.hpp"
#include "tournament/numeric.hpp"

namespace tourney {

namespace {

constexpr double kSingularityMargin = 10.0 * std::numeric_limits<double>::epsilon();

void check_ode_inputs(int n, const ValueDistribution& f, const ValueDistribution& g) {
    if (n < 2) throw ConfigError("bid ODE needs n >= 2");
    if (f.support_lo() != 0.0 || g.support_lo() != 0.0) {
        throw ConfigError("bid ODE assumes value supports starting at 0");
    }
    if (!(g.mean() > f.support_hi())) {
        throw ConfigError(
            "bid ODE is posed for an entrant whose mean value exceeds the top first-stage value");
    }
}

}  // namespace

double bid_ode_slope(double b, double v, int n, const ValueDistribution& f,
                     const ValueDistribution& g) {
    if (b - v < kSingularityMargin) {
        throw NumericalFault("bid ODE slope at the b = v singularity");
    }
    if (b > g.support_hi()) {
        throw NumericalFault("bid ODE slope outside the entrant bid support");
    }
    const double fv = f.pdf(v);
    const double Fv = f.cdf(v);
    const double gb = g.pdf(b);
    const double Gb = g.cdf(b);
    if (Fv <= 0.0 || gb <= 0.0) {
        throw NumericalFault("bid ODE slope needs interior v and b");
    }
    const double shaded = v - g.truncated_mean(b);
    return (n - 1.0) * (fv / Fv) * (Gb / gb) * shaded / (b - v);
}

OdeSolution solve_bid_ode(int n, const ValueDistribution& f,
                          const ValueDistribution& g, double step) {
    check_ode_inputs(n, f, g);
    const double v_max = f.support_hi();
    const double v0 = 1e-4 * v_max;
    const double span = v_max - v0;
    if (step <= 0.0) step = span / 1e4;
    const auto steps = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(std::ceil(span / step - 1e-9))));
    const double h = span / static_cast<double>(steps);

    OdeSolution sol;
    sol.n = n;
    sol.step = h;
    sol.v_seed = v0;
    sol.v.reserve(steps + 1);
    sol.b.reserve(steps + 1);

    double b = 2.0 * n / (n + 1.0) * v0;
    sol.v.push_back(v0);
    sol.b.push_back(b);

    const auto slope = [&](double bb, double vv) { return bid_ode_slope(bb, vv, n, f, g); };
    for (std::size_t i = 0; i < steps; ++i) {
        const double v = v0 + static_cast<double>(i) * h;
        const double v_next = (i + 1 == steps) ? v_max : v0 + static_cast<double>(i + 1) * h;
        const double k1 = slope(b, v);
        const double k2 = slope(b + 0.5 * h * k1, v + 0.5 * h);
        const double k3 = slope(b + 0.5 * h * k2, v + 0.5 * h);
        const double k4 = slope(b + h * k3, v_next);
        b += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (b - v_next < kSingularityMargin) {
            throw NumericalFault("bid path touched the b = v singularity");
        }
        if (b > g.support_hi()) {
            throw NumericalFault("bid path exited the entrant bid support");
        }
        sol.v.push_back(v_next);
        sol.b.push_back(b);
    }
    return sol;
}

double solve_limit_bid(double top_value, const ValueDistribution& g) {
    if (!(top_value > 0.0)) throw ConfigError("top value must be positive");
    if (!(g.mean() > top_value)) {
        throw NumericalFault(
            "no finite limit bid: the entrant's mean value must exceed the top value");
    }
    const auto excess = [&](double b) { return g.truncated_mean(b) - top_value; };
    return bisect_root(excess, top_value, g.support_hi(), 1e-12);
}

double limit_revenue_asymmetric(double limit_bid, const ValueDistribution& g) {
    const double Gb = g.cdf(limit_bid);
    if (Gb <= 0.0) return limit_bid;
    return (1.0 - Gb) * limit_bid + Gb * g.truncated_mean(limit_bid);
}

LimitAnalysis limit_analysis(double top_value, const ValueDistribution& g) {
    LimitAnalysis out;
    out.limit_bid = solve_limit_bid(top_value, g);
    out.revenue_commitment = limit_revenue_asymmetric(out.limit_bid, g);
    out.revenue_no_commitment = top_value;
    return out;
}

double envelope_residual(int n, const ValueDistribution& f,
                         const ValueDistribution& g, const OdeSolution& sol) {
    if (sol.v.size() < 2 || sol.v.size() != sol.b.size()) {
        throw ConfigError("envelope check needs a solved bid path");
    }
    const double v_max = f.support_hi();
    const double direct =
        std::pow(f.cdf(v_max), n - 1) * g.second_stage_gain(v_max, sol.top_bid());

    const auto integrand = [&](double v, double b) {
        return std::pow(f.cdf(v), n - 1) * g.cdf(b);
    };
    // Trapezoid over the knots, with the seed gap [0, v0] closed by a
    // zero-bid knot at the origin.
    double acc = 0.5 * sol.v.front() * (integrand(0.0, 0.0) + integrand(sol.v.front(), sol.b.front()));
    for (std::size_t i = 0; i + 1 < sol.v.size(); ++i) {
        const double width = sol.v[i + 1] - sol.v[i];
        acc += 0.5 * width *
               (integrand(sol.v[i], sol.b[i]) + integrand(sol.v[i + 1], sol.b[i + 1]));
    }
    return std::abs(direct - acc);
}

}  // namespace tourney
