#include "tournament/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tournament/error.hpp"
#include "tournament/numeric.hpp"

namespace tourney {

ValueDistribution::ValueDistribution(Kind kind, double lo, double hi)
    : kind_(kind), lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigError("distribution support must be finite");
    }
    if (lo < 0.0) {
        throw ConfigError("distribution support must start at or above 0");
    }
    if (hi <= lo) {
        throw ConfigError("distribution support must have positive length");
    }
}

ValueDistribution ValueDistribution::uniform(double lo, double hi) {
    return ValueDistribution(Kind::Uniform, lo, hi);
}

ValueDistribution ValueDistribution::custom(double lo, double hi,
                                            std::function<double(double)> pdf,
                                            std::function<double(double)> cdf,
                                            std::function<double(double)> quantile) {
    ValueDistribution d(Kind::Custom, lo, hi);
    if (!pdf || !cdf || !quantile) {
        throw ConfigError("custom distribution needs pdf, cdf and quantile");
    }
    d.pdf_ = std::move(pdf);
    d.cdf_ = std::move(cdf);
    d.quantile_ = std::move(quantile);
    return d;
}

double ValueDistribution::pdf(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    if (kind_ == Kind::Uniform) return 1.0 / (hi_ - lo_);
    return pdf_(x);
}

double ValueDistribution::cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    if (kind_ == Kind::Uniform) return (x - lo_) / (hi_ - lo_);
    return std::clamp(cdf_(x), 0.0, 1.0);
}

double ValueDistribution::quantile(double p) const {
    if (p < 0.0 || p > 1.0) {
        throw ConfigError("quantile argument must lie in [0, 1]");
    }
    if (kind_ == Kind::Uniform) return lo_ + p * (hi_ - lo_);
    return std::clamp(quantile_(p), lo_, hi_);
}

double ValueDistribution::mean() const {
    if (kind_ == Kind::Uniform) return 0.5 * (lo_ + hi_);
    return adaptive_simpson([this](double x) { return x * pdf_(x); }, lo_, hi_);
}

double ValueDistribution::truncated_mean(double b) const {
    const double cap = std::min(b, hi_);
    if (cdf(cap) <= 0.0) {
        throw NumericalFault("degenerate truncation: no mass at or below " +
                             std::to_string(b));
    }
    if (kind_ == Kind::Uniform) return 0.5 * (lo_ + cap);
    const double num =
        adaptive_simpson([this](double x) { return x * pdf_(x); }, lo_, cap);
    return num / cdf(cap);
}

double ValueDistribution::second_stage_gain(double v, double b) const {
    const double cap = std::min(b, hi_);
    const double mass = cdf(cap);
    if (mass <= 0.0) return 0.0;
    if (kind_ == Kind::Uniform) {
        return mass * (v - 0.5 * (lo_ + cap));
    }
    return adaptive_simpson([this, v](double x) { return (v - x) * pdf_(x); },
                            lo_, cap);
}

std::string ValueDistribution::describe() const {
    std::ostringstream out;
    if (kind_ == Kind::Uniform) {
        out << "uniform(" << lo_ << ", " << hi_ << ")";
    } else {
        out << "custom(" << lo_ << ", " << hi_ << ")";
    }
    return out.str();
}

}  // namespace tourney
