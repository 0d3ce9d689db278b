#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>

#include "hiwx/calendar.hpp"
#include "hiwx/distributions.hpp"
#include "hiwx/error.hpp"
#include "hiwx/random.hpp"
#include "hiwx/verification/sample.hpp"

namespace hiwx {

struct BootstrapSettings {
    int block_days = 5;
    std::size_t replicates = 1000;
    double low_level = 0.05;
    double high_level = 0.95;
    std::uint64_t seed = 0;
};

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;

    double width() const noexcept { return high - low; }
};

// Moving-block bootstrap over validity dates. The date range is cut into
// consecutive blocks of block_days days starting at the earliest date;
// each replicate draws that many blocks with replacement and recomputes the
// statistic. Replicate i draws from an engine seeded with mix(seed) ^ i, so
// the result depends only on the settings; mixing first keeps nearby seeds
// from sharing replicate streams.
template <class Record, class DateOf, class Statistic>
ConfidenceInterval block_bootstrap_ci(std::span<const Record> records, DateOf date_of, Statistic statistic,
                                      const BootstrapSettings& settings) {
    if (settings.block_days < 1) fail(ErrorCode::BadConfig, "block length must be at least one day");
    if (settings.replicates < 100) fail(ErrorCode::BadConfig, "bootstrap needs at least 100 replicates");
    if (!(settings.low_level >= 0.0 && settings.low_level <= settings.high_level && settings.high_level <= 1.0))
        fail(ErrorCode::LevelOutOfRange, "bootstrap levels must satisfy 0 <= low <= high <= 1");
    if (records.empty()) fail(ErrorCode::EmptySample, "bootstrap of an empty sample");

    Date first = date_of(records.front());
    for (const auto& r : records)
        if (to_days(date_of(r)) < to_days(first)) first = date_of(r);

    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto b = static_cast<std::size_t>(days_between(first, date_of(records[i])) / settings.block_days);
        if (b >= blocks.size()) blocks.resize(b + 1);
        blocks[b].push_back(i);
    }
    if (blocks.size() < 2) fail(ErrorCode::TooFewBlocks, "date range spans fewer than two blocks");

    std::vector<double> stats;
    stats.reserve(settings.replicates);
    std::vector<Record> resampled;
    resampled.reserve(records.size());
    boost::random::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
    const std::uint64_t base = mix_seed(settings.seed);
    for (std::size_t rep = 0; rep < settings.replicates; ++rep) {
        auto engine = make_engine(base ^ static_cast<std::uint64_t>(rep));
        resampled.clear();
        for (std::size_t k = 0; k < blocks.size(); ++k)
            for (std::size_t idx : blocks[pick(engine)]) resampled.push_back(records[idx]);
        stats.push_back(statistic(std::span<const Record>(resampled)));
    }
    const EmpiricalDistribution dist(std::move(stats));
    return {dist.quantile(settings.low_level), dist.quantile(settings.high_level)};
}

template <class Statistic>
ConfidenceInterval block_bootstrap_ci(const VerificationSample& sample, Statistic statistic,
                                      const BootstrapSettings& settings) {
    auto date_of = [](const VerificationRecord& r) { return r.validity_date; };
    auto wrapped = [&](std::span<const VerificationRecord> recs) {
        VerificationSample replicate{{recs.begin(), recs.end()}, sample.event_quantile, sample.obs_climate};
        return statistic(replicate);
    };
    return block_bootstrap_ci(std::span<const VerificationRecord>(sample.records), date_of, wrapped, settings);
}

} // namespace hiwx
