#include "tournament/strategy.hpp"

#include <algorithm>
#include <cmath>

#include "tournament/error.hpp"

namespace tourney {

std::string to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Truthful: return "truthful";
        case StrategyKind::NoCommitmentFirstStage: return "no-commitment-first-stage";
        case StrategyKind::CommitmentSymmetricUniform: return "commitment-symmetric-uniform";
        case StrategyKind::CommitmentAsymmetricUniform: return "commitment-asymmetric-uniform";
        case StrategyKind::OdeNumeric: return "ode-numeric";
    }
    return "unknown";
}

double truthful_bid(double v) { return v; }

double no_commitment_first_stage_bid(double v, const ValueDistribution& g) {
    if (v <= g.support_lo()) return 0.0;
    return g.second_stage_gain(v, v);
}

namespace {

double linear_slope(int n) {
    if (n < 2) throw ConfigError("commitment bid needs n >= 2");
    return 2.0 * n / (n + 1.0);
}

}  // namespace

double commitment_symmetric_bid(double v, int n, double cutoff, double cap) {
    const double slope = linear_slope(n);
    const double lo = 0.5;
    const double hi = (n + 1.0) / (2.0 * n);
    if (!(cutoff > lo && cutoff < hi)) {
        throw ConfigError("symmetric commitment cutoff must lie strictly inside (1/2, (n+1)/(2n))");
    }
    if (!(cap > 1.0)) {
        throw ConfigError("symmetric commitment cap must exceed the top value 1");
    }
    if (v <= cutoff) return slope * v;
    return cap;
}

double commitment_asymmetric_bid(double v, int n) {
    return linear_slope(n) * v;
}

double ode_table_bid(const std::vector<double>& v_knots,
                     const std::vector<double>& b_knots, double v) {
    if (v_knots.size() < 2 || v_knots.size() != b_knots.size()) {
        throw ConfigError("bid table needs at least two aligned knots");
    }
    if (v < v_knots.front() || v > v_knots.back()) {
        throw ConfigError("bid table evaluated outside its knot range");
    }
    const auto it = std::upper_bound(v_knots.begin(), v_knots.end(), v);
    std::size_t hi = it == v_knots.end() ? v_knots.size() - 1
                                         : static_cast<std::size_t>(it - v_knots.begin());
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double span = v_knots[hi] - v_knots[lo];
    const double t = span > 0.0 ? (v - v_knots[lo]) / span : 0.0;
    return b_knots[lo] + t * (b_knots[hi] - b_knots[lo]);
}

BidStrategy BidStrategy::truthful(double domain_hi) {
    BidStrategy s(StrategyKind::Truthful);
    s.domain_hi_ = domain_hi;
    return s;
}

BidStrategy BidStrategy::no_commitment_first_stage(ValueDistribution g, double domain_hi) {
    BidStrategy s(StrategyKind::NoCommitmentFirstStage);
    s.entrant_ = std::move(g);
    s.domain_hi_ = domain_hi;
    return s;
}

BidStrategy BidStrategy::commitment_symmetric(int n, double cutoff, double cap) {
    commitment_symmetric_bid(0.0, n, cutoff, cap);  // validates n, cutoff, cap
    BidStrategy s(StrategyKind::CommitmentSymmetricUniform);
    s.n_ = n;
    s.cutoff_ = cutoff;
    s.cap_ = cap;
    s.domain_hi_ = 1.0;
    return s;
}

BidStrategy BidStrategy::commitment_asymmetric(int n) {
    linear_slope(n);
    BidStrategy s(StrategyKind::CommitmentAsymmetricUniform);
    s.n_ = n;
    s.domain_hi_ = 1.0;
    return s;
}

BidStrategy BidStrategy::ode_numeric(std::vector<double> v_knots,
                                     std::vector<double> b_knots) {
    if (v_knots.size() != b_knots.size() || v_knots.size() < 2) {
        throw ConfigError("numeric bid strategy needs at least two aligned knots");
    }
    if (!std::is_sorted(v_knots.begin(), v_knots.end()) ||
        std::adjacent_find(v_knots.begin(), v_knots.end()) != v_knots.end()) {
        throw ConfigError("numeric bid strategy knots must be strictly increasing in v");
    }
    if (v_knots.front() > 0.0) {
        v_knots.insert(v_knots.begin(), 0.0);
        b_knots.insert(b_knots.begin(), 0.0);
    }
    BidStrategy s(StrategyKind::OdeNumeric);
    s.domain_lo_ = v_knots.front();
    s.domain_hi_ = v_knots.back();
    s.v_knots_ = std::move(v_knots);
    s.b_knots_ = std::move(b_knots);
    return s;
}

double BidStrategy::bid(double v) const {
    const double x = std::clamp(v, domain_lo_, domain_hi_);
    switch (kind_) {
        case StrategyKind::Truthful:
            return truthful_bid(x);
        case StrategyKind::NoCommitmentFirstStage:
            return no_commitment_first_stage_bid(x, entrant_);
        case StrategyKind::CommitmentSymmetricUniform:
            return commitment_symmetric_bid(x, n_, cutoff_, cap_);
        case StrategyKind::CommitmentAsymmetricUniform:
            return commitment_asymmetric_bid(x, n_);
        case StrategyKind::OdeNumeric:
            return ode_table_bid(v_knots_, b_knots_, x);
    }
    throw ConfigError("unknown strategy kind");
}

}  // namespace tourney
