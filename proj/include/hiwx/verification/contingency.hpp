#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hiwx/error.hpp"
#include "hiwx/verification/sample.hpp"

namespace hiwx {

// 2x2 table for one decision threshold.
struct ContingencyTable {
    std::size_t hits = 0;               // a: yes forecast, event
    std::size_t false_alarms = 0;       // b: yes forecast, no event
    std::size_t misses = 0;             // c: no forecast, event
    std::size_t correct_rejections = 0; // d: no forecast, no event

    std::size_t total() const noexcept { return hits + false_alarms + misses + correct_rejections; }
    std::size_t events() const noexcept { return hits + misses; }
    std::size_t non_events() const noexcept { return false_alarms + correct_rejections; }

    std::optional<double> hit_rate() const {
        if (events() == 0) return std::nullopt;
        return static_cast<double>(hits) / static_cast<double>(events());
    }
    std::optional<double> false_alarm_rate() const {
        if (non_events() == 0) return std::nullopt;
        return static_cast<double>(false_alarms) / static_cast<double>(non_events());
    }
    double base_rate() const {
        if (total() == 0) fail(ErrorCode::EmptySample, "base rate of an empty table");
        return static_cast<double>(events()) / static_cast<double>(total());
    }

    friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

// Forecast "yes" iff value > decision_threshold.
inline ContingencyTable contingency(std::span<const ForecastEventPair> pairs, double decision_threshold) {
    if (pairs.empty()) fail(ErrorCode::EmptySample, "contingency table of an empty sample");
    ContingencyTable t;
    for (const auto& p : pairs) {
        const bool yes = p.value > decision_threshold;
        if (yes && p.event) ++t.hits;
        else if (yes) ++t.false_alarms;
        else if (p.event) ++t.misses;
        else ++t.correct_rejections;
    }
    return t;
}

// One table per threshold, counted from sorted event/non-event values.
inline std::vector<ContingencyTable> contingency_tables(std::span<const ForecastEventPair> pairs,
                                                        std::span<const double> thresholds) {
    if (pairs.empty()) fail(ErrorCode::EmptySample, "contingency table of an empty sample");
    std::vector<double> ev, nev;
    for (const auto& p : pairs) (p.event ? ev : nev).push_back(p.value);
    std::sort(ev.begin(), ev.end());
    std::sort(nev.begin(), nev.end());
    auto above = [](const std::vector<double>& v, double t) {
        return static_cast<std::size_t>(v.end() - std::upper_bound(v.begin(), v.end(), t));
    };
    std::vector<ContingencyTable> tables;
    tables.reserve(thresholds.size());
    for (double t : thresholds) {
        ContingencyTable c;
        c.hits = above(ev, t);
        c.misses = ev.size() - c.hits;
        c.false_alarms = above(nev, t);
        c.correct_rejections = nev.size() - c.false_alarms;
        tables.push_back(c);
    }
    return tables;
}

} // namespace hiwx
