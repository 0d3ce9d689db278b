#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiwx/error.hpp"
#include "hiwx/indices.hpp"
#include "hiwx/verification/contingency.hpp"

namespace hiwx {

struct RocPoint {
    double threshold = 0.0;
    double false_alarm_rate = 0.0;
    double hit_rate = 0.0;
};

// Points ordered from (0,0) to (1,1). The two end points carry thresholds
// +inf (never yes) and -inf (always yes).
struct RocCurve {
    std::vector<RocPoint> points;
    std::optional<double> auc;
};

inline constexpr std::size_t kPotentialThresholdCount = 500;

inline std::vector<double> equally_spaced_thresholds(double lo, double hi, std::size_t n = kPotentialThresholdCount) {
    if (n < 2 || !(lo < hi)) fail(ErrorCode::BadThresholds, "threshold grid needs n >= 2 and lo < hi");
    std::vector<double> t(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = lo + step * static_cast<double>(i);
    t.back() = hi;
    return t;
}

// Thresholds spanning the possible range of an index: [0,1] for CPF,
// [-1,1] for EFI, and the observed min/max of `values` for SOT and ANF.
inline std::vector<double> potential_thresholds(IndexKind kind, std::span<const double> values = {},
                                                std::size_t n = kPotentialThresholdCount) {
    switch (kind) {
    case IndexKind::CPF: return equally_spaced_thresholds(0.0, 1.0, n);
    case IndexKind::EFI: return equally_spaced_thresholds(-1.0, 1.0, n);
    case IndexKind::SOT:
    case IndexKind::ANF: {
        if (values.empty()) fail(ErrorCode::EmptySample, "data-driven threshold grid needs values");
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        if (*lo == *hi) return {*lo};
        return equally_spaced_thresholds(*lo, *hi, n);
    }
    }
    fail(ErrorCode::BadThresholds, "unknown index kind");
}

// Decision thresholds used when the index is drawn on a chart.
inline std::vector<double> actionable_thresholds(IndexKind kind) {
    switch (kind) {
    case IndexKind::CPF: return {0.85, 0.95, 0.98, 0.99, 0.999};
    case IndexKind::EFI: return {0.3, 0.5, 0.6, 0.7, 0.8, 0.9};
    case IndexKind::SOT: return {0.0, 1.0, 2.0, 5.0, 8.0};
    case IndexKind::ANF: break;
    }
    fail(ErrorCode::BadThresholds, "no actionable threshold preset for " + std::string(to_string(kind)));
}

inline double trapezoid_auc(std::span<const RocPoint> points) {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
        area += (points[i].false_alarm_rate - points[i - 1].false_alarm_rate) *
                (points[i].hit_rate + points[i - 1].hit_rate) / 2.0;
    return area;
}

inline RocCurve roc_curve_from_tables(std::span<const ContingencyTable> tables, std::span<const double> thresholds) {
    if (tables.empty() || tables.size() != thresholds.size())
        fail(ErrorCode::BadThresholds, "need one contingency table per threshold");
    if (tables.front().events() == 0 || tables.front().non_events() == 0)
        fail(ErrorCode::DegenerateSample, "ROC needs both events and non-events");

    RocCurve curve;
    curve.points.reserve(tables.size() + 2);
    constexpr double inf = std::numeric_limits<double>::infinity();
    curve.points.push_back({inf, 0.0, 0.0});
    for (std::size_t i = 0; i < tables.size(); ++i)
        curve.points.push_back({thresholds[i], *tables[i].false_alarm_rate(), *tables[i].hit_rate()});
    curve.points.push_back({-inf, 1.0, 1.0});
    std::stable_sort(curve.points.begin(), curve.points.end(), [](const RocPoint& a, const RocPoint& b) {
        if (a.false_alarm_rate != b.false_alarm_rate) return a.false_alarm_rate < b.false_alarm_rate;
        if (a.hit_rate != b.hit_rate) return a.hit_rate < b.hit_rate;
        return a.threshold > b.threshold;
    });
    curve.auc = trapezoid_auc(curve.points);
    return curve;
}

inline RocCurve roc_curve(std::span<const ForecastEventPair> pairs, std::span<const double> thresholds) {
    if (thresholds.empty()) fail(ErrorCode::BadThresholds, "ROC needs at least one decision threshold");
    const auto tables = contingency_tables(pairs, thresholds);
    return roc_curve_from_tables(tables, thresholds);
}

// Relative improvement of a test AUC over a reference AUC.
inline double auc_skill_score(double auc_test, double auc_ref) {
    if (auc_ref == 1.0) fail(ErrorCode::ReferencePerfect, "reference AUC is 1");
    return (auc_test - auc_ref) / (1.0 - auc_ref);
}

} // namespace hiwx
