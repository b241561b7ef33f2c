#pragma once

#include <functional>
#include <string>

#include "tournament/random.hpp"

namespace tourney {

/// A private-value distribution on [support_lo, support_hi] with the
/// truncated-moment queries the equilibrium and simulation code needs.
///
/// The uniform family is evaluated in closed form. Any other family can be
/// plugged in through pdf/cdf/quantile callables; its truncated moments fall
/// back to adaptive quadrature.
class ValueDistribution {
public:
    enum class Kind { Uniform, Custom };

    static ValueDistribution uniform(double lo, double hi);

    /// A distribution supplied by pdf/cdf/quantile on [lo, hi]. The density
    /// must be positive on the interior and bounded.
    static ValueDistribution custom(double lo, double hi,
                                    std::function<double(double)> pdf,
                                    std::function<double(double)> cdf,
                                    std::function<double(double)> quantile);

    Kind kind() const { return kind_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }

    double pdf(double x) const;

    /// Nondecreasing; x outside the support clamps to 0/1.
    double cdf(double x) const;

    /// Inverse CDF for p in [0, 1].
    double quantile(double p) const;

    /// One draw from the stream: identical stream state gives identical draws.
    double sample(RandomStream& rng) const { return quantile(rng.next_double()); }

    double mean() const;

    /// E[w | w <= b]. Values of b beyond the support clamp; b at or below
    /// the zero-mass left edge is a degenerate truncation and throws
    /// NumericalFault.
    double truncated_mean(double b) const;

    /// Expected gain from a second-stage second-price contest against this
    /// distribution when holding value v and entering with bid b:
    ///   integral over [0, b] of (v - x) dG(x)  =  G(b) * (v - E[w | w <= b]).
    /// With b = v this is the value of second-stage participation; it can go
    /// negative when b > v.
    double second_stage_gain(double v, double b) const;

    std::string describe() const;

private:
    ValueDistribution(Kind kind, double lo, double hi);

    Kind kind_;
    double lo_;
    double hi_;
    std::function<double(double)> pdf_;
    std::function<double(double)> cdf_;
    std::function<double(double)> quantile_;
};

}  // namespace tourney
