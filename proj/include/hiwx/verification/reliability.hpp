#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "hiwx/climatology.hpp"

namespace hiwx {

struct ReliabilityCase {
    double cpf = 0.0;
    double observed = 0.0;
    std::reference_wrapper<const ClimateDistribution> climate;
};

struct ReliabilityDiagram {
    static constexpr std::size_t kBins = 6;
    static constexpr std::array<double, kBins> kCenters{0.75, 0.80, 0.85, 0.90, 0.95, 0.99};
    // Bin k holds cpf in [kEdges[k], kEdges[k+1]); the first bin is open at
    // its lower edge and the last is closed at 1.
    static constexpr std::array<double, kBins + 1> kEdges{0.725, 0.775, 0.825, 0.875, 0.925, 0.97, 1.0};

    std::array<std::size_t, kBins> counts{};
    std::array<std::optional<double>, kBins> observed_frequency{};
    std::array<double, kBins> case_share{}; // fraction of all input cases
    std::size_t total_cases = 0;
};

// For each case with cpf > 0.725, checks whether the observation stays at or
// below the observed-climate quantile at the case's own cpf level; the
// per-bin non-exceedance frequency is compared against the bin center.
inline ReliabilityDiagram reliability_diagram(std::span<const ReliabilityCase> cases) {
    using D = ReliabilityDiagram;
    D out;
    out.total_cases = cases.size();
    std::array<std::size_t, D::kBins> below{};
    for (const auto& c : cases) {
        if (!(c.cpf > D::kEdges.front()) || c.cpf > 1.0) continue;
        std::size_t k = 0;
        while (k + 1 < D::kBins && c.cpf >= D::kEdges[k + 1]) ++k;
        ++out.counts[k];
        if (c.observed <= c.climate.get().quantile(c.cpf)) ++below[k];
    }
    for (std::size_t k = 0; k < D::kBins; ++k) {
        if (out.counts[k] > 0)
            out.observed_frequency[k] = static_cast<double>(below[k]) / static_cast<double>(out.counts[k]);
        if (out.total_cases > 0)
            out.case_share[k] = static_cast<double>(out.counts[k]) / static_cast<double>(out.total_cases);
    }
    return out;
}

} // namespace hiwx
