#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "hiwx/calendar.hpp"
#include "hiwx/climatology.hpp"
#include "hiwx/dataset.hpp"
#include "hiwx/error.hpp"
#include "hiwx/random.hpp"

namespace hiwx {

struct ScenarioConfig {
    std::size_t locations = 100;
    Date start_date = std::chrono::year{2021} / std::chrono::June / 1;
    int days = 90;
    int ensemble_size = 50;
    int reforecast_members = 10;
    int runs_per_week = 2;
    int years = 20;
    std::vector<int> lead_days{1, 3, 6};

    // Fraction of climate variance the forecast cannot predict at lead L:
    // 1 - exp(-L / predictability_days) unless overridden per lead.
    double predictability_days = 4.0;
    std::map<int, double> error_variance;
    // Miscalibration knobs, per lead: members spread is multiplied by
    // dispersion and shifted by bias (in climate standard deviations).
    std::map<int, double> dispersion;
    std::map<int, double> bias;

    double autocorrelation = 0.7; // lag-one correlation of the daily truth
    VariableKind variable = VariableKind::Precipitation;
    double dry_probability = 0.4;
    double gamma_shape = 0.8;
    double scale_min = 2.0; // gamma scale or gaussian stddev per location
    double scale_max = 8.0;
    double mean_min = 10.0; // gaussian location mean
    double mean_max = 20.0;
    int window_days = 14;   // archives cover the validity period padded by this
    std::uint64_t seed = 1;

    double error_variance_at(int lead) const {
        if (auto it = error_variance.find(lead); it != error_variance.end()) return it->second;
        return 1.0 - std::exp(-static_cast<double>(lead) / predictability_days);
    }
    double dispersion_at(int lead) const {
        auto it = dispersion.find(lead);
        return it == dispersion.end() ? 1.0 : it->second;
    }
    double bias_at(int lead) const {
        auto it = bias.find(lead);
        return it == bias.end() ? 0.0 : it->second;
    }

    void validate() const {
        auto bad = [](const std::string& m) { fail(ErrorCode::BadConfig, m); };
        if (locations == 0) bad("locations must be positive");
        if (!start_date.ok()) bad("invalid start date");
        if (days <= 0) bad("days must be positive");
        if (ensemble_size < 2) bad("ensemble size must be at least 2");
        if (reforecast_members < 1 || runs_per_week < 1 || runs_per_week > 7 || years < 1)
            bad("reforecast members, runs per week (1..7) and years must be positive");
        if (lead_days.empty()) bad("at least one lead time is required");
        for (int lead : lead_days) {
            if (lead < 0) bad("lead times must be non-negative");
            const double v = error_variance_at(lead);
            if (!(v > 0.0 && v < 1.0)) bad("error variance must lie in (0,1) at every lead");
            if (!(dispersion_at(lead) > 0.0)) bad("dispersion must be positive");
            if (!std::isfinite(bias_at(lead))) bad("bias must be finite");
        }
        if (!(predictability_days > 0.0)) bad("predictability_days must be positive");
        if (!(autocorrelation > -1.0 && autocorrelation < 1.0)) bad("autocorrelation must lie in (-1,1)");
        if (!(dry_probability >= 0.0 && dry_probability < 1.0)) bad("dry probability must lie in [0,1)");
        if (!(gamma_shape > 0.0)) bad("gamma shape must be positive");
        if (!(scale_min > 0.0 && scale_min <= scale_max)) bad("scale range must be positive and ordered");
        if (!(mean_min <= mean_max)) bad("mean range must be ordered");
        if (window_days < 0) bad("window_days must be non-negative");
    }
};

struct SyntheticDataset {
    ScenarioConfig config;
    Dataset data; // observations hold the truth series
};

namespace detail {

struct LocationClimate {
    double mean = 0.0;
    double scale = 1.0;
};

// Monotone map from a standard-normal latent value to the physical variable.
// Precipitation: zero below the dry probability, gamma-distributed above.
inline double to_physical(const ScenarioConfig& cfg, const LocationClimate& lc, double z) {
    if (cfg.variable == VariableKind::Gaussian) return lc.mean + lc.scale * z;
    namespace bm = boost::math;
    const double upper = bm::cdf(bm::complement(bm::normal_distribution<double>(), z));
    const double wet = 1.0 - cfg.dry_probability;
    if (upper >= wet) return 0.0;
    const double q = std::max(upper / wet, 1e-300);
    return bm::quantile(bm::complement(bm::gamma_distribution<double>(cfg.gamma_shape, lc.scale), q));
}

inline Date with_year(Date d, int year) {
    Date out{std::chrono::year{year}, d.month(), d.day()};
    if (!out.ok()) out = Date{std::chrono::year{year}, d.month(), std::chrono::day{28}};
    return out;
}

inline std::string location_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "L%03zu", i);
    return buf;
}

} // namespace detail

// Truth is a stationary AR(1) standard-normal series per location. A lead-L
// forecast sees a predictable signal m with z | m ~ N(m, v_L),
// m ~ N(0, 1 - v_L); members are m + bias + dispersion * sqrt(v_L) * eps,
// so with dispersion 1 and bias 0 truth and members are exchangeable.
// Reforecasts use the same construction on past years' truth.
inline SyntheticDataset generate(const ScenarioConfig& cfg) {
    cfg.validate();
    SyntheticDataset out;
    out.config = cfg;
    Dataset& ds = out.data;
    ds.variable = cfg.variable;
    ds.units = cfg.variable == VariableKind::Precipitation ? "mm/day" : "1";
    ds.start_date = cfg.start_date;
    ds.days = cfg.days;
    ds.ensemble_size = cfg.ensemble_size;
    ds.lead_days = cfg.lead_days;
    std::sort(ds.lead_days.begin(), ds.lead_days.end());
    ds.lead_days.erase(std::unique(ds.lead_days.begin(), ds.lead_days.end()), ds.lead_days.end());

    const int pad = cfg.window_days;
    const int segment_days = cfg.days + 2 * pad;
    const int start_year = static_cast<int>(cfg.start_date.year());

    std::vector<ArchiveRecord> truth_records;
    std::map<int, std::vector<ArchiveRecord>> reforecast_records;

    for (std::size_t li = 0; li < cfg.locations; ++li) {
        const LocationId loc = detail::location_name(li);
        ds.locations.push_back(loc);
        auto engine = make_engine(cfg.seed ^ (0x5851f42d4c957f2dULL * (li + 1)));
        boost::random::normal_distribution<double> normal;
        boost::random::uniform_real_distribution<double> unit;

        detail::LocationClimate lc;
        lc.scale = cfg.scale_min + (cfg.scale_max - cfg.scale_min) * unit(engine);
        lc.mean = cfg.mean_min + (cfg.mean_max - cfg.mean_min) * unit(engine);

        auto draw_members = [&](double z, int lead, int count) {
            const double v = cfg.error_variance_at(lead);
            const double signal = (1.0 - v) * z + std::sqrt((1.0 - v) * v) * normal(engine);
            const double spread = cfg.dispersion_at(lead) * std::sqrt(v);
            std::vector<double> members(static_cast<std::size_t>(count));
            for (auto& m : members)
                m = detail::to_physical(cfg, lc, signal + cfg.bias_at(lead) + spread * normal(engine));
            return members;
        };

        for (int k = -cfg.years; k <= 0; ++k) {
            const Date segment_start = add_days(detail::with_year(cfg.start_date, start_year + k), -pad);
            const double innovation = std::sqrt(1.0 - cfg.autocorrelation * cfg.autocorrelation);
            double z = normal(engine);
            for (int j = 0; j < segment_days; ++j) {
                if (j > 0) z = cfg.autocorrelation * z + innovation * normal(engine);
                const Date date = add_days(segment_start, j);
                const double value = detail::to_physical(cfg, lc, z);
                truth_records.push_back({loc, date, {value}});

                if (k < 0) {
                    if ((j * cfg.runs_per_week) % 7 < cfg.runs_per_week)
                        for (int lead : ds.lead_days)
                            reforecast_records[lead].push_back({loc, date, draw_members(z, lead, cfg.reforecast_members)});
                } else if (j >= pad && j < pad + cfg.days) {
                    for (int lead : ds.lead_days)
                        ds.forecasts[{loc, date, lead}] = draw_members(z, lead, cfg.ensemble_size);
                }
            }
        }
    }

    ds.observations = ReforecastArchive(std::move(truth_records), 1, cfg.years + 1);
    for (auto& [lead, recs] : reforecast_records)
        ds.reforecasts.emplace(lead, ReforecastArchive(std::move(recs), cfg.reforecast_members, cfg.years));
    return out;
}

// ---------------------------------------------------------------------------
// Analytic crossing point of two parametric CDFs

enum class DistributionFamily { Normal, Gamma };

// Normal: (mean, stddev). Gamma: (shape, scale).
struct FamilyParams {
    double first = 0.0;
    double second = 1.0;
};

namespace detail {

struct AnalyticCdf {
    DistributionFamily family;
    FamilyParams p;

    double cdf(double x) const {
        namespace bm = boost::math;
        if (family == DistributionFamily::Normal) return bm::cdf(bm::normal_distribution<double>(p.first, p.second), x);
        if (x <= 0.0) return 0.0;
        return bm::cdf(bm::gamma_distribution<double>(p.first, p.second), x);
    }
    double upper(double x) const {
        namespace bm = boost::math;
        if (family == DistributionFamily::Normal)
            return bm::cdf(bm::complement(bm::normal_distribution<double>(p.first, p.second), x));
        if (x <= 0.0) return 1.0;
        return bm::cdf(bm::complement(bm::gamma_distribution<double>(p.first, p.second), x));
    }
    double quantile(double q) const {
        namespace bm = boost::math;
        if (family == DistributionFamily::Normal)
            return bm::quantile(bm::normal_distribution<double>(p.first, p.second), q);
        return bm::quantile(bm::gamma_distribution<double>(p.first, p.second), q);
    }
};

// F(x) - G(x), taken from the upper tails where both CDFs are close to 1.
inline double cdf_gap(const AnalyticCdf& f, const AnalyticCdf& g, double x) {
    const double fc = f.cdf(x), gc = g.cdf(x);
    if (fc > 0.5 && gc > 0.5) return g.upper(x) - f.upper(x);
    return fc - gc;
}

} // namespace detail

// Climate probability level G(y*) where the analytic forecast CDF crosses
// the climate CDF from below. Follows the crossing-point conventions:
// identical distributions give 0, F >= G everywhere gives 0, F <= G
// everywhere gives 1. Any other sign pattern than one upward crossing is
// rejected.
inline double analytic_cpf_oracle(DistributionFamily family, FamilyParams forecast, FamilyParams climate) {
    if (family == DistributionFamily::Normal ? !(forecast.second > 0 && climate.second > 0)
                                             : !(forecast.first > 0 && forecast.second > 0 && climate.first > 0 &&
                                                 climate.second > 0))
        fail(ErrorCode::BadConfig, "distribution parameters must be positive");
    const detail::AnalyticCdf f{family, forecast}, g{family, climate};
    if (forecast.first == climate.first && forecast.second == climate.second) return 0.0;

    const double tail = 1e-12;
    const double lo = std::min(f.quantile(tail), g.quantile(tail));
    const double hi = std::max(f.quantile(1.0 - tail), g.quantile(1.0 - tail));
    constexpr int kGrid = 200000;

    int prev_sign = 0, changes = 0;
    bool neg = false, pos = false, upward = false;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double last_negative_x = lo;
    for (int i = 0; i <= kGrid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / kGrid;
        const double d = detail::cdf_gap(f, g, x);
        const int s = (d > 0) - (d < 0);
        if (s == 0) continue;
        if (s < 0) {
            neg = true;
            last_negative_x = x;
        } else {
            pos = true;
        }
        if (prev_sign != 0 && s != prev_sign) {
            ++changes;
            if (prev_sign < 0) {
                upward = true;
                bracket_lo = last_negative_x;
                bracket_hi = x;
            }
        }
        prev_sign = s;
    }
    if (!neg && !pos) return 0.0;
    if (!neg) return 0.0;
    if (!pos) return 1.0;
    if (changes != 1 || !upward)
        fail(ErrorCode::NoQualifyingCrossing, "distributions do not cross once from below");

    for (int it = 0; it < 200 && bracket_hi - bracket_lo > 1e-15 * std::max(1.0, std::abs(bracket_hi)); ++it) {
        const double mid = 0.5 * (bracket_lo + bracket_hi);
        if (detail::cdf_gap(f, g, mid) < 0) bracket_lo = mid;
        else bracket_hi = mid;
    }
    return g.cdf(0.5 * (bracket_lo + bracket_hi));
}

} // namespace hiwx
