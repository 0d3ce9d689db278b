#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "hiwx/error.hpp"
#include "hiwx/indices.hpp"

namespace hiwx {

struct KendallResult {
    double tau = 0.0;             // tau-a
    std::size_t n = 0;
    std::int64_t score = 0;       // concordant - discordant
    std::uint64_t ties_a = 0;     // pairs tied in a (including joint ties)
    std::uint64_t ties_b = 0;
    std::uint64_t ties_both = 0;
};

namespace detail {

inline std::uint64_t tied_pairs(std::uint64_t run) { return run * (run - 1) / 2; }

// Sorts v[lo,hi) while counting pairs with v[i] > v[j], i < j.
inline std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                                      std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += mid - i;
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

} // namespace detail

// Kendall tau-a in O(n log n) (Knight's merge-sort algorithm). Tied pairs
// add nothing to the numerator; tie counts are reported alongside.
inline KendallResult kendall_tau(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) fail(ErrorCode::LocationMismatch, "kendall_tau: series lengths differ");
    const std::size_t n = a.size();
    if (n < 2) fail(ErrorCode::TooFewPoints, "kendall_tau needs at least two points");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a[i] != a[j] ? a[i] < a[j] : b[i] < b[j];
    });

    KendallResult r;
    r.n = n;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && a[order[j]] == a[order[i]]) ++j;
        r.ties_a += detail::tied_pairs(j - i);
        for (std::size_t k = i; k < j;) {
            std::size_t m = k;
            while (m < j && b[order[m]] == b[order[k]]) ++m;
            r.ties_both += detail::tied_pairs(m - k);
            k = m;
        }
        i = j;
    }

    std::vector<double> ys(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = b[order[i]];
    const std::uint64_t discordant = detail::count_inversions(ys, buf, 0, n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && ys[j] == ys[i]) ++j;
        r.ties_b += detail::tied_pairs(j - i);
        i = j;
    }

    const std::uint64_t total = detail::tied_pairs(n);
    r.score = static_cast<std::int64_t>(total - r.ties_a - r.ties_b + r.ties_both) -
              2 * static_cast<std::int64_t>(discordant);
    r.tau = static_cast<double>(r.score) / static_cast<double>(total);
    return r;
}

// Tau over the locations where both fields have a value.
inline KendallResult kendall_tau(const IndexField& field_a, const IndexField& field_b) {
    std::vector<double> a, b;
    for (const auto& [loc, va] : field_a.entries) {
        auto it = field_b.entries.find(loc);
        if (it == field_b.entries.end() || va.missing() || it->second.missing()) continue;
        a.push_back(*va.value);
        b.push_back(*it->second.value);
    }
    if (a.size() < 2) fail(ErrorCode::TooFewPoints, "fewer than two shared non-missing locations");
    return kendall_tau(a, b);
}

struct DatedTau {
    Date validity_date{};
    double tau = 0.0;
};

struct AveragedTau {
    std::vector<DatedTau> per_date;
    double mean = 0.0;
};

// Tau per validity date (fields paired by date), then averaged over dates.
// Dates with fewer than two shared points are skipped.
inline AveragedTau mean_kendall_tau(std::span<const IndexField> fields_a, std::span<const IndexField> fields_b) {
    std::map<std::int64_t, const IndexField*> by_date;
    for (const auto& f : fields_b) by_date[to_days(f.validity_date).time_since_epoch().count()] = &f;
    AveragedTau out;
    double sum = 0.0;
    for (const auto& fa : fields_a) {
        auto it = by_date.find(to_days(fa.validity_date).time_since_epoch().count());
        if (it == by_date.end()) continue;
        try {
            const double t = kendall_tau(fa, *it->second).tau;
            out.per_date.push_back({fa.validity_date, t});
            sum += t;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooFewPoints) throw;
        }
    }
    if (out.per_date.empty()) fail(ErrorCode::TooFewPoints, "no validity date with two shared points");
    out.mean = sum / static_cast<double>(out.per_date.size());
    return out;
}

// Tau over all (date, location) points pooled together.
inline KendallResult pooled_kendall_tau(std::span<const IndexField> fields_a, std::span<const IndexField> fields_b) {
    std::map<std::pair<std::int64_t, LocationId>, double> b_values;
    for (const auto& f : fields_b)
        for (const auto& [loc, v] : f.entries)
            if (!v.missing()) b_values[{to_days(f.validity_date).time_since_epoch().count(), loc}] = *v.value;
    std::vector<double> a, b;
    for (const auto& f : fields_a)
        for (const auto& [loc, v] : f.entries) {
            if (v.missing()) continue;
            auto it = b_values.find({to_days(f.validity_date).time_since_epoch().count(), loc});
            if (it == b_values.end()) continue;
            a.push_back(*v.value);
            b.push_back(it->second);
        }
    if (a.size() < 2) fail(ErrorCode::TooFewPoints, "fewer than two shared non-missing points");
    return kendall_tau(a, b);
}

} // namespace hiwx
