#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "hiwx/climatology.hpp"
#include "hiwx/dataset.hpp"
#include "hiwx/distributions.hpp"
#include "hiwx/error.hpp"
#include "hiwx/indices.hpp"
#include "hiwx/verification.hpp"

// Glue between a Dataset and the index / verification modules.

namespace hiwx {

inline constexpr int kDefaultWindowDays = 14;
inline constexpr double kDefaultEventQuantile = 0.95;

struct ClimateSet {
    std::map<std::tuple<int, LocationId, int>, ClimateDistribution> model; // (lead, location, day of year)
    std::shared_ptr<const ObsClimateTable> observed;

    const ClimateDistribution& model_climate(int lead, const LocationId& location, Date date) const {
        auto it = model.find({lead, location, day_of_year(date)});
        if (it == model.end())
            fail(ErrorCode::MissingClimate, "no model climate for " + location + " on " + format_date(date) +
                                                " at lead " + std::to_string(lead));
        return it->second;
    }
};

// Model climate per lead from that lead's reforecasts, observed climate from
// the observation archive, for every location and validity day of year.
inline ClimateSet build_climates(const Dataset& ds, int window_days = kDefaultWindowDays) {
    ClimateSet set;
    auto observed = std::make_shared<ObsClimateTable>();
    const auto dates = ds.validity_dates();
    for (const auto& loc : ds.locations) {
        for (Date date : dates) {
            const int doy = day_of_year(date);
            if (!observed->contains({loc, doy}))
                observed->emplace(std::pair{loc, doy}, build_climate(ds.observations, loc, date, window_days));
            for (int lead : ds.lead_days) {
                auto archive = ds.reforecasts.find(lead);
                if (archive == ds.reforecasts.end())
                    fail(ErrorCode::MissingClimate, "no reforecasts for lead " + std::to_string(lead));
                auto key = std::tuple{lead, loc, doy};
                if (!set.model.contains(key)) set.model.emplace(key, build_climate(archive->second, loc, date, window_days));
            }
        }
    }
    set.observed = std::move(observed);
    return set;
}

// One field per validity date. Locations without a forecast get a missing value.
inline std::vector<IndexField> index_fields(const Dataset& ds, const ClimateSet& climates, IndexKind kind, int lead,
                                            const IndexSettings& settings) {
    std::vector<IndexField> fields;
    for (Date date : ds.validity_dates()) {
        IndexField field{kind, date, lead, {}};
        for (const auto& loc : ds.locations) {
            auto it = ds.forecasts.find({loc, date, lead});
            if (it == ds.forecasts.end()) {
                field.entries.emplace(loc, IndexValue{kind, std::nullopt});
                continue;
            }
            const EmpiricalDistribution forecast(it->second);
            field.entries.emplace(loc, compute_index(kind, forecast, climates.model_climate(lead, loc, date), settings));
        }
        fields.push_back(std::move(field));
    }
    return fields;
}

// Pairs index values with the observation on the same date and location.
inline VerificationSample verification_sample(const Dataset& ds, const ClimateSet& climates,
                                              std::span<const IndexField> fields,
                                              double event_quantile = kDefaultEventQuantile) {
    VerificationSample sample{{}, event_quantile, climates.observed};
    for (const auto& field : fields)
        for (const auto& [loc, v] : field.entries) {
            auto obs = ds.observation(loc, field.validity_date);
            if (!obs) continue;
            sample.records.push_back({loc, field.validity_date, v.value, *obs});
        }
    return sample;
}

inline double auc_of(std::span<const ForecastEventPair> pairs, std::span<const double> thresholds) {
    return *roc_curve(pairs, thresholds).auc;
}

// Two indices verified against the same events, record by record.
struct PairedIndexRecord {
    Date validity_date{};
    double a = 0.0;
    double b = 0.0;
    bool event = false;
};

inline std::vector<PairedIndexRecord> paired_records(const VerificationSample& sample_a,
                                                     const VerificationSample& sample_b) {
    std::map<std::pair<LocationId, std::int64_t>, double> b_values;
    for (const auto& r : sample_b.records)
        if (r.index) b_values[{r.location, to_days(r.validity_date).time_since_epoch().count()}] = *r.index;
    std::vector<PairedIndexRecord> out;
    for (const auto& r : sample_a.records) {
        if (!r.index) continue;
        auto it = b_values.find({r.location, to_days(r.validity_date).time_since_epoch().count()});
        if (it == b_values.end()) continue;
        const double threshold = sample_a.climate_for(r).quantile(sample_a.event_quantile);
        out.push_back({r.validity_date, *r.index, it->second, r.observed > threshold});
    }
    return out;
}

} // namespace hiwx
