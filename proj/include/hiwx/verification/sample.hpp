#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hiwx/calendar.hpp"
#include "hiwx/climatology.hpp"
#include "hiwx/error.hpp"

namespace hiwx {

struct VerificationRecord {
    LocationId location;
    Date validity_date{};
    std::optional<double> index;
    double observed = 0.0;
};

// Observed climate per (location, day of year).
using ObsClimateTable = std::map<std::pair<LocationId, int>, ClimateDistribution>;

struct VerificationSample {
    std::vector<VerificationRecord> records;
    double event_quantile = 0.95;
    std::shared_ptr<const ObsClimateTable> obs_climate;

    const ClimateDistribution& climate_for(const VerificationRecord& r) const {
        if (obs_climate) {
            auto it = obs_climate->find({r.location, day_of_year(r.validity_date)});
            if (it != obs_climate->end()) return it->second;
        }
        fail(ErrorCode::MissingClimate, "no observed climate for " + r.location + " on " +
                                            format_date(r.validity_date));
    }
};

struct ForecastEventPair {
    double value = 0.0;
    bool event = false;
};

struct BinarizedSample {
    std::vector<ForecastEventPair> pairs;
    std::size_t excluded_missing = 0;
};

inline void require_event_quantile(double q) {
    if (!(q > 0.0 && q < 1.0))
        fail(ErrorCode::LevelOutOfRange, "event quantile must lie in (0,1), got " + std::to_string(q));
}

// An event is an observation strictly above the local observed-climate
// quantile at event_quantile. Records without an index value are dropped
// and counted.
inline BinarizedSample binarize(const VerificationSample& sample) {
    require_event_quantile(sample.event_quantile);
    BinarizedSample out;
    out.pairs.reserve(sample.records.size());
    for (const auto& r : sample.records) {
        const double threshold = sample.climate_for(r).quantile(sample.event_quantile);
        if (!r.index) {
            ++out.excluded_missing;
            continue;
        }
        out.pairs.push_back({*r.index, r.observed > threshold});
    }
    return out;
}

// Keeps records whose observation exceeds the climate quantile at
// condition_quantile; the event definition is unchanged.
inline VerificationSample conditional_filter(const VerificationSample& sample, double condition_quantile) {
    if (!(condition_quantile >= 0.0 && condition_quantile < sample.event_quantile))
        fail(ErrorCode::QuantileOrder, "condition quantile must lie in [0, event quantile)");
    VerificationSample out{{}, sample.event_quantile, sample.obs_climate};
    for (const auto& r : sample.records)
        if (r.observed > sample.climate_for(r).quantile(condition_quantile)) out.records.push_back(r);
    return out;
}

} // namespace hiwx
