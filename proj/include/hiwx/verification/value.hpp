#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hiwx/error.hpp"
#include "hiwx/verification/contingency.hpp"

namespace hiwx {

// Relative economic value of one yes/no forecast for a user with
// cost-loss ratio alpha (static cost-loss model):
//
//   V = (min(a,s) - F a (1-s) + H s (1-a) - s) / (min(a,s) - s a)
//
// with H the hit rate, F the false alarm rate and s the base rate.
// V(s) reduces to H - F.
inline double relative_value(const ContingencyTable& table, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::LevelOutOfRange, "cost-loss ratio must lie in (0,1)");
    if (table.events() == 0 || table.non_events() == 0)
        fail(ErrorCode::DegenerateSample, "economic value needs base rate strictly between 0 and 1");
    const double s = table.base_rate();
    const double h = *table.hit_rate();
    const double f = *table.false_alarm_rate();
    const double clim = std::min(alpha, s);
    return (clim - f * alpha * (1.0 - s) + h * s * (1.0 - alpha) - s) / (clim - s * alpha);
}

struct PevCurve {
    std::vector<double> cost_loss_ratios;
    std::vector<double> values; // envelope over decision thresholds
    double base_rate = 0.0;
};

inline PevCurve pev_curve(std::span<const ContingencyTable> tables, std::span<const double> alphas) {
    if (tables.empty()) fail(ErrorCode::EmptySample, "economic value needs at least one table");
    const auto n = tables.front().total();
    const auto events = tables.front().events();
    for (const auto& t : tables)
        if (t.total() != n || t.events() != events)
            fail(ErrorCode::BadConfig, "contingency tables come from different samples");

    PevCurve curve;
    curve.base_rate = tables.front().base_rate();
    for (double a : alphas) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& t : tables) best = std::max(best, relative_value(t, a));
        curve.cost_loss_ratios.push_back(a);
        curve.values.push_back(best);
    }
    return curve;
}

// n cost-loss ratios spaced evenly in log(alpha) between lo and hi.
inline std::vector<double> log_spaced_alphas(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi < 1.0 && lo < hi) || n < 2)
        fail(ErrorCode::BadConfig, "log-spaced cost-loss grid needs 0 < lo < hi < 1 and n >= 2");
    std::vector<double> a(n);
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    a.front() = lo;
    a.back() = hi;
    return a;
}

} // namespace hiwx
