#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hiwx/error.hpp"

namespace hiwx {

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
};

namespace detail {

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) fail(ErrorCode::NonFinite, std::string(what) + " is not finite");
}

inline void require_level(double level) {
    if (!(level >= 0.0 && level <= 1.0))
        fail(ErrorCode::LevelOutOfRange, "probability level " + std::to_string(level) + " outside [0,1]");
}

// Linear interpolation between equally spaced nodes; `pos` is a fractional
// node index. Positions within rounding distance of a node return the node
// value exactly so that quantiles at the grid levels round-trip.
inline double interpolate_nodes(std::span<const double> nodes, double pos) {
    const double last = static_cast<double>(nodes.size() - 1);
    pos = std::clamp(pos, 0.0, last);
    const double nearest = std::nearbyint(pos);
    if (std::abs(pos - nearest) <= 1e-9 * std::max(1.0, pos))
        return nodes[static_cast<std::size_t>(nearest)];
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double lo = nodes[i];
    const double hi = nodes[i + 1];
    if (lo == hi) return lo;
    return lo + (pos - static_cast<double>(i)) * (hi - lo);
}

// Population moments (divide by n).
inline Moments moments(std::span<const double> xs) {
    Moments m;
    if (xs.empty()) return m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
    return m;
}

} // namespace detail

// Sample-backed distribution of a scalar variable. Holds an ensemble forecast
// (one value per member) or any pooled sample.
//
// The CDF is the right-continuous step function #(values <= x)/n. Quantiles
// interpolate linearly between order statistics placed at plotting positions
// i/(n-1), so level 0 is the sample minimum and level 1 the maximum.
class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> samples) : values_(std::move(samples)) {
        if (values_.empty()) fail(ErrorCode::EmptySample, "empirical distribution needs at least one sample");
        for (double v : values_) detail::require_finite(v, "sample value");
        std::sort(values_.begin(), values_.end());
    }

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }

    double cdf_at(double x) const {
        if (std::isnan(x)) fail(ErrorCode::NonFinite, "cdf_at: NaN argument");
        const auto below = std::upper_bound(values_.begin(), values_.end(), x) - values_.begin();
        return static_cast<double>(below) / static_cast<double>(values_.size());
    }

    double quantile(double level) const {
        detail::require_level(level);
        if (values_.size() == 1) return values_.front();
        return detail::interpolate_nodes(values_, level * static_cast<double>(values_.size() - 1));
    }

private:
    std::vector<double> values_;
};

inline EmpiricalDistribution build_empirical(std::vector<double> samples) {
    return EmpiricalDistribution(std::move(samples));
}

// Percentiles 0%, 1%, ..., 100% of a climate distribution.
class PercentileGrid {
public:
    static constexpr std::size_t kSize = 101;

    explicit PercentileGrid(std::span<const double> thresholds) {
        if (thresholds.size() != kSize)
            fail(ErrorCode::TooFewSamples, "percentile grid needs exactly 101 thresholds, got " +
                                               std::to_string(thresholds.size()));
        for (std::size_t i = 0; i < kSize; ++i) {
            detail::require_finite(thresholds[i], "percentile threshold");
            if (i > 0 && thresholds[i] < thresholds[i - 1])
                fail(ErrorCode::BadConfig, "percentile thresholds must be non-decreasing");
            thresholds_[i] = thresholds[i];
        }
    }

    static constexpr double level(std::size_t i) { return static_cast<double>(i) / 100.0; }

    std::span<const double, kSize> thresholds() const noexcept { return thresholds_; }
    double threshold(std::size_t i) const { return thresholds_.at(i); }

    double quantile(double level) const {
        detail::require_level(level);
        return detail::interpolate_nodes(thresholds_, level * 100.0);
    }

    // Inverse of the interpolated quantile function, made right-continuous:
    // the largest level whose quantile does not exceed x. Flat runs of
    // thresholds (a point mass) resolve to the top of the run.
    double cdf_at(double x) const {
        if (std::isnan(x)) fail(ErrorCode::NonFinite, "cdf_at: NaN argument");
        if (x < thresholds_.front()) return 0.0;
        if (x >= thresholds_.back()) return 1.0;
        const auto j = static_cast<std::size_t>(
            std::upper_bound(thresholds_.begin(), thresholds_.end(), x) - thresholds_.begin() - 1);
        const double lo = thresholds_[j];
        const double hi = thresholds_[j + 1];
        return (static_cast<double>(j) + (x - lo) / (hi - lo)) / 100.0;
    }

    friend bool operator==(const PercentileGrid&, const PercentileGrid&) = default;

private:
    std::array<double, kSize> thresholds_{};
};

inline PercentileGrid to_percentile_grid(const EmpiricalDistribution& d) {
    if (d.size() < 2) fail(ErrorCode::TooFewSamples, "percentile grid needs at least two samples");
    std::array<double, PercentileGrid::kSize> t{};
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = d.quantile(PercentileGrid::level(i));
    return PercentileGrid(t);
}

// Sample mean and population standard deviation.
inline Moments mean_stddev(const EmpiricalDistribution& d) { return detail::moments(d.values()); }

// Moments of the 101 thresholds themselves; an approximation of the moments
// of the distribution the grid was built from.
inline Moments mean_stddev(const PercentileGrid& g) { return detail::moments(g.thresholds()); }

} // namespace hiwx
