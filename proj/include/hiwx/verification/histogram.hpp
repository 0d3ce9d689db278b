#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hiwx/error.hpp"
#include "hiwx/indices.hpp"

namespace hiwx {

// Counts per half-open bin [e_i, e_{i+1}); the last bin is closed.
// Values outside [e_0, e_last] are not counted.
inline std::vector<std::size_t> index_histogram(std::span<const double> values, std::span<const double> bin_edges) {
    if (bin_edges.size() < 2) fail(ErrorCode::BadBins, "need at least two bin edges");
    for (std::size_t i = 1; i < bin_edges.size(); ++i)
        if (!(bin_edges[i] > bin_edges[i - 1])) fail(ErrorCode::BadBins, "bin edges must be strictly increasing");
    std::vector<std::size_t> counts(bin_edges.size() - 1, 0);
    for (double v : values) {
        if (!(v >= bin_edges.front() && v <= bin_edges.back())) continue;
        auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), v);
        auto bin = static_cast<std::size_t>(it - bin_edges.begin()) - 1;
        if (bin == counts.size()) --bin;
        ++counts[bin];
    }
    return counts;
}

// Non-missing values across a set of fields.
inline std::vector<std::size_t> index_histogram(std::span<const IndexField> fields, std::span<const double> bin_edges) {
    std::vector<double> values;
    for (const auto& f : fields)
        for (const auto& [loc, v] : f.entries)
            if (!v.missing()) values.push_back(*v.value);
    return index_histogram(values, bin_edges);
}

} // namespace hiwx
