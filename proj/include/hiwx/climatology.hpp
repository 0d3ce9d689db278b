#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hiwx/calendar.hpp"
#include "hiwx/distributions.hpp"
#include "hiwx/error.hpp"

namespace hiwx {

using LocationId = std::string;

struct ArchiveRecord {
    LocationId location;
    Date validity_date;
    std::vector<double> members;
};

// Past runs (reforecasts, or observations with a single member) indexed by
// location and day of year. Immutable once built.
class ReforecastArchive {
public:
    ReforecastArchive() = default;

    ReforecastArchive(std::vector<ArchiveRecord> records, int members_per_run, int years_covered)
        : records_(std::move(records)), members_per_run_(members_per_run), years_covered_(years_covered) {
        for (std::size_t i = 0; i < records_.size(); ++i) {
            const auto& r = records_[i];
            if (r.members.empty())
                fail(ErrorCode::EmptySample, "archive record for " + r.location + " on " +
                                                 format_date(r.validity_date) + " has no member values");
            if (!r.validity_date.ok()) fail(ErrorCode::ParseError, "archive record with invalid date");
            for (double v : r.members) detail::require_finite(v, "archive value");
            by_location_[r.location][static_cast<std::size_t>(day_of_year(r.validity_date))].push_back(i);
        }
    }

    const std::vector<ArchiveRecord>& records() const noexcept { return records_; }
    int members_per_run() const noexcept { return members_per_run_; }
    int years_covered() const noexcept { return years_covered_; }
    bool has_location(const LocationId& id) const { return by_location_.contains(id); }

    // Record indices for one location and day of year (1..365).
    const std::vector<std::size_t>& records_on(const LocationId& id, int doy) const {
        static const std::vector<std::size_t> none;
        auto it = by_location_.find(id);
        if (it == by_location_.end()) return none;
        return it->second[static_cast<std::size_t>(doy)];
    }

private:
    using DayIndex = std::array<std::vector<std::size_t>, kDaysPerClimateYear + 1>;

    std::vector<ArchiveRecord> records_;
    int members_per_run_ = 0;
    int years_covered_ = 0;
    std::map<LocationId, DayIndex> by_location_;
};

// Local climate for one location and day of year, stored as a percentile grid.
struct ClimateDistribution {
    PercentileGrid grid;
    double mean = 0.0;
    double stddev = 0.0;
    LocationId location;
    int day_of_year = 0;
    std::size_t sample_count = 0;

    double quantile(double level) const { return grid.quantile(level); }
    double cdf_at(double x) const { return grid.cdf_at(x); }
};

// Climate from an already pooled sample. Moments are those of the grid.
inline ClimateDistribution make_climate(std::vector<double> pooled, LocationId location, int doy) {
    if (pooled.size() < 2)
        fail(ErrorCode::InsufficientClimate, "climate for " + location + " day " + std::to_string(doy) +
                                                 " has " + std::to_string(pooled.size()) + " values");
    const std::size_t n = pooled.size();
    auto grid = to_percentile_grid(EmpiricalDistribution(std::move(pooled)));
    const auto m = mean_stddev(grid);
    return ClimateDistribution{grid, m.mean, m.stddev, std::move(location), doy, n};
}

// Pools every member value of runs whose day of year lies within
// +-window_days of the validity date, across all years.
inline ClimateDistribution build_climate(const ReforecastArchive& archive, const LocationId& location,
                                         Date validity_date, int window_days) {
    if (window_days < 0) fail(ErrorCode::BadConfig, "window_days must be non-negative");
    if (!archive.has_location(location)) fail(ErrorCode::UnknownLocation, "no archive data for location " + location);

    const int target = day_of_year(validity_date);
    const int half = std::min(window_days, kDaysPerClimateYear / 2);
    std::vector<double> pooled;
    for (int offset = -half; offset <= half; ++offset) {
        const int doy = (target - 1 + offset + kDaysPerClimateYear) % kDaysPerClimateYear + 1;
        for (std::size_t idx : archive.records_on(location, doy)) {
            const auto& members = archive.records()[idx].members;
            pooled.insert(pooled.end(), members.begin(), members.end());
        }
    }
    return make_climate(std::move(pooled), location, target);
}

// Return period in years of an event at climate quantile level q of a
// day-of-year climatology.
inline double return_period(double q) {
    if (!(q >= 0.0 && q < 1.0))
        fail(ErrorCode::LevelOutOfRange, "return period needs q in [0,1), got " + std::to_string(q));
    return 1.0 / (1.0 - q);
}

} // namespace hiwx
