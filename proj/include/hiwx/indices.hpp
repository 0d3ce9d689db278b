#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiwx/calendar.hpp"
#include "hiwx/climatology.hpp"
#include "hiwx/distributions.hpp"
#include "hiwx/error.hpp"

namespace hiwx {

enum class IndexKind { CPF, EFI, SOT, ANF };

inline constexpr std::array<IndexKind, 4> kAllIndexKinds{IndexKind::CPF, IndexKind::EFI, IndexKind::SOT,
                                                         IndexKind::ANF};

constexpr std::string_view to_string(IndexKind kind) {
    switch (kind) {
    case IndexKind::CPF: return "cpf";
    case IndexKind::EFI: return "efi";
    case IndexKind::SOT: return "sot";
    case IndexKind::ANF: return "anf";
    }
    return "?";
}

inline IndexKind parse_index_kind(std::string_view text) {
    for (auto k : kAllIndexKinds)
        if (text == to_string(k)) return k;
    fail(ErrorCode::ParseError, "unknown index kind '" + std::string(text) + "'");
}

struct IndexValue {
    IndexKind kind = IndexKind::CPF;
    std::optional<double> value;

    bool missing() const noexcept { return !value.has_value(); }
};

struct IndexField {
    IndexKind kind = IndexKind::CPF;
    Date validity_date{};
    int lead_days = 0;
    std::map<LocationId, IndexValue> entries;
};

// ---------------------------------------------------------------------------
// Crossing-point forecast

enum class CrossingBranch {
    InteriorCrossing,
    FAlwaysAbove,   // cpf = 0
    FAlwaysBelow,   // cpf = 1
    DegenerateEqual // D == 0 at every scanned point, cpf = 0
};

constexpr std::string_view to_string(CrossingBranch b) {
    switch (b) {
    case CrossingBranch::InteriorCrossing: return "interior_crossing";
    case CrossingBranch::FAlwaysAbove: return "f_always_above";
    case CrossingBranch::FAlwaysBelow: return "f_always_below";
    case CrossingBranch::DegenerateEqual: return "degenerate_equal";
    }
    return "?";
}

struct CrossingResult {
    std::optional<double> y_star;
    double cpf = 0.0;
    CrossingBranch branch = CrossingBranch::DegenerateEqual;
    // False when D changes sign only from F>G to F<G; the branch then
    // reports the side F ends up on.
    bool qualifying_crossing = false;
    // Points where the sign of D = F - G (zeros skipped) first differs from
    // the previous non-zero sign, in scan order.
    std::vector<double> sign_changes;

    // True when the scanned points satisfy the single crossing condition:
    // D never positive before y* and never negative after it.
    bool single_crossing() const {
        return sign_changes.empty() || (sign_changes.size() == 1 && qualifying_crossing);
    }
};

// Scans D(x) = F(x) - G(x) upward over the union of forecast members and
// climate thresholds (restricted to x > lower_bound when given) and reports
// the climate probability level G(y*) at the first crossing from F<G to F>G.
// When D is zero on an interval right before turning positive, y* is the
// last point of that interval.
inline CrossingResult cpf(const EmpiricalDistribution& forecast, const ClimateDistribution& climate,
                          std::optional<double> lower_bound = std::nullopt) {
    std::vector<double> xs(forecast.values().begin(), forecast.values().end());
    const auto t = climate.grid.thresholds();
    xs.insert(xs.end(), t.begin(), t.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (lower_bound) xs.erase(xs.begin(), std::upper_bound(xs.begin(), xs.end(), *lower_bound));

    CrossingResult out;
    int last_sign = 0;
    bool seen_negative = false, seen_positive = false;
    bool zero_run = false; // previous point was a zero following a negative

    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double d = forecast.cdf_at(xs[j]) - climate.cdf_at(xs[j]);
        const int sign = (d > 0) - (d < 0);
        if (sign != 0 && last_sign != 0 && sign != last_sign) out.sign_changes.push_back(xs[j]);
        if (sign != 0) last_sign = sign;

        if (sign < 0) {
            seen_negative = true;
            zero_run = false;
        } else if (sign == 0) {
            zero_run = seen_negative;
        } else {
            seen_positive = true;
            if (seen_negative && !out.y_star) {
                out.y_star = zero_run ? xs[j - 1] : xs[j];
                out.branch = CrossingBranch::InteriorCrossing;
                out.qualifying_crossing = true;
                out.cpf = climate.cdf_at(*out.y_star);
            }
            seen_negative = false;
            zero_run = false;
        }
    }
    if (out.y_star) return out;

    if (!seen_negative && !seen_positive && last_sign == 0) {
        out.branch = CrossingBranch::DegenerateEqual;
        out.cpf = 0.0;
    } else if (last_sign < 0) {
        out.branch = CrossingBranch::FAlwaysBelow;
        out.cpf = 1.0;
    } else {
        out.branch = CrossingBranch::FAlwaysAbove;
        out.cpf = 0.0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Extreme forecast index

namespace detail {

// Antiderivatives of p/sqrt(p(1-p)) and 1/sqrt(p(1-p)) on [0,1].
inline double efi_a(double p) { return std::asin(std::sqrt(p)) - std::sqrt(p * (1.0 - p)); }
inline double efi_b(double p) { return 2.0 * std::asin(std::sqrt(p)); }

} // namespace detail

// Fraction of members at or below each climate percentile, the forecast
// mass profile the EFI integrates against. Between percentile levels the
// profile is interpolated linearly in p.
inline std::array<double, PercentileGrid::kSize> efi_profile(const EmpiricalDistribution& forecast,
                                                            const PercentileGrid& climate) {
    std::array<double, PercentileGrid::kSize> f{};
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = forecast.cdf_at(climate.threshold(i));
    return f;
}

// (2/pi) * integral over p of (p - Ftilde(p)) / sqrt(p(1-p)), integrated
// exactly on each 1% interval where Ftilde is linear.
inline double efi_value(const EmpiricalDistribution& forecast, const PercentileGrid& climate) {
    const auto f = efi_profile(forecast, climate);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        const double p0 = PercentileGrid::level(i);
        const double p1 = PercentileGrid::level(i + 1);
        const double slope = (f[i + 1] - f[i]) / (p1 - p0);
        const double offset = f[i] - slope * p0;
        sum += (1.0 - slope) * (detail::efi_a(p1) - detail::efi_a(p0)) -
               offset * (detail::efi_b(p1) - detail::efi_b(p0));
    }
    return std::clamp(2.0 / std::numbers::pi * sum, -1.0, 1.0);
}

inline IndexValue efi(const EmpiricalDistribution& forecast, const ClimateDistribution& climate) {
    return {IndexKind::EFI, efi_value(forecast, climate.grid)};
}

// ---------------------------------------------------------------------------
// Shift of tails (upper tail)

inline IndexValue sot(const EmpiricalDistribution& forecast, const ClimateDistribution& climate) {
    const double g99 = climate.quantile(0.99);
    const double g90 = climate.quantile(0.90);
    if (g99 == g90) return {IndexKind::SOT, std::nullopt};
    const double f90 = forecast.quantile(0.90);
    return {IndexKind::SOT, -(g99 - f90) / (g99 - g90)};
}

// ---------------------------------------------------------------------------
// Standardised ensemble-mean anomaly

inline constexpr double kDefaultAnomalyStabilizer = 1.0;

inline IndexValue anf(const EmpiricalDistribution& forecast, const ClimateDistribution& climate,
                      double k = kDefaultAnomalyStabilizer) {
    if (!(k >= 0.0)) fail(ErrorCode::BadConfig, "anomaly stabilizer k must be >= 0");
    const double scale = climate.stddev + k;
    if (scale == 0.0) fail(ErrorCode::ZeroScale, "sigma(G) + k is zero for location " + climate.location);
    return {IndexKind::ANF, (mean_stddev(forecast).mean - climate.mean) / scale};
}

// ---------------------------------------------------------------------------

struct IndexSettings {
    double anf_k = kDefaultAnomalyStabilizer;
    std::optional<double> lower_bound;
};

inline IndexValue compute_index(IndexKind kind, const EmpiricalDistribution& forecast,
                                const ClimateDistribution& climate, const IndexSettings& settings = {}) {
    switch (kind) {
    case IndexKind::CPF: return {IndexKind::CPF, cpf(forecast, climate, settings.lower_bound).cpf};
    case IndexKind::EFI: return efi(forecast, climate);
    case IndexKind::SOT: return sot(forecast, climate);
    case IndexKind::ANF: return anf(forecast, climate, settings.anf_k);
    }
    fail(ErrorCode::BadConfig, "unknown index kind");
}

inline IndexField compute_index_field(const std::map<LocationId, EmpiricalDistribution>& forecasts,
                                      const std::map<LocationId, ClimateDistribution>& climates, IndexKind kind,
                                      const IndexSettings& settings = {}, Date validity_date = {},
                                      int lead_days = 0) {
    if (lead_days < 0) fail(ErrorCode::BadConfig, "lead time must be non-negative");
    if (forecasts.size() != climates.size() ||
        !std::equal(forecasts.begin(), forecasts.end(), climates.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; }))
        fail(ErrorCode::LocationMismatch, "forecast and climate location sets differ");

    IndexField field{kind, validity_date, lead_days, {}};
    auto c = climates.begin();
    for (const auto& [loc, forecast] : forecasts) {
        field.entries.emplace(loc, compute_index(kind, forecast, c->second, settings));
        ++c;
    }
    return field;
}

} // namespace hiwx
