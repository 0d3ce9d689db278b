#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hiwx/calendar.hpp"
#include "hiwx/climatology.hpp"
#include "hiwx/dataset.hpp"
#include "hiwx/error.hpp"
#include "hiwx/experiment.hpp"
#include "hiwx/indices.hpp"
#include "hiwx/io/csv.hpp"

namespace hiwx::io {

// ---------------------------------------------------------------------------
// Ensemble tables: forecasts, reforecasts and observations share one layout.

inline constexpr std::string_view kEnsembleHeader = "location,validity_date,lead_days,member_index,value";

struct EnsembleRow {
    LocationId location;
    Date validity_date{};
    int lead_days = 0;
    int member_index = 0;
    double value = 0.0;

    friend auto operator<=>(const EnsembleRow&, const EnsembleRow&) = default;
};

inline std::string ensemble_table_text(std::vector<EnsembleRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const EnsembleRow& a, const EnsembleRow& b) {
        return std::tie(a.location, a.validity_date, a.lead_days, a.member_index) <
               std::tie(b.location, b.validity_date, b.lead_days, b.member_index);
    });
    std::string out(kEnsembleHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += r.location;
        out += ',';
        out += format_date(r.validity_date);
        out += ',';
        out += std::to_string(r.lead_days);
        out += ',';
        out += std::to_string(r.member_index);
        out += ',';
        out += format_number(r.value);
        out += '\n';
    }
    return out;
}

inline std::vector<EnsembleRow> read_ensemble_table(const std::string& path) {
    std::vector<EnsembleRow> rows;
    for (const auto& row : read_csv(path, kEnsembleHeader)) {
        const auto& f = row.fields;
        if (f[0].empty()) parse_error(path, row.line, "empty location");
        EnsembleRow r;
        r.location = f[0];
        try {
            r.validity_date = parse_date(f[1]);
        } catch (const Error& e) {
            parse_error(path, row.line, e.what());
        }
        r.lead_days = parse_int(f[2], path, row.line);
        r.member_index = parse_int(f[3], path, row.line);
        r.value = parse_number(f[4], path, row.line);
        if (r.lead_days < 0 || r.member_index < 0)
            parse_error(path, row.line, "lead_days and member_index must be non-negative");
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::vector<EnsembleRow> rows_from_forecasts(const EnsembleForecasts& forecasts) {
    std::vector<EnsembleRow> rows;
    for (const auto& [key, members] : forecasts)
        for (std::size_t m = 0; m < members.size(); ++m)
            rows.push_back({key.location, key.validity_date, key.lead_days, static_cast<int>(m), members[m]});
    return rows;
}

inline std::vector<EnsembleRow> rows_from_archive(const ReforecastArchive& archive, int lead_days) {
    std::vector<EnsembleRow> rows;
    for (const auto& rec : archive.records())
        for (std::size_t m = 0; m < rec.members.size(); ++m)
            rows.push_back({rec.location, rec.validity_date, lead_days, static_cast<int>(m), rec.members[m]});
    return rows;
}

namespace detail {

// Groups rows by (location, date, lead); members ordered by member_index.
inline std::map<ForecastKey, std::vector<double>> group_rows(const std::vector<EnsembleRow>& rows,
                                                             const std::string& what) {
    std::map<ForecastKey, std::map<int, double>> grouped;
    for (const auto& r : rows)
        if (!grouped[{r.location, r.validity_date, r.lead_days}].emplace(r.member_index, r.value).second)
            fail(ErrorCode::ParseError, what + ": duplicate member " + std::to_string(r.member_index) + " for " +
                                            r.location + " on " + format_date(r.validity_date));
    std::map<ForecastKey, std::vector<double>> out;
    for (auto& [key, members] : grouped) {
        auto& v = out[key];
        for (const auto& [idx, value] : members) v.push_back(value);
    }
    return out;
}

inline ReforecastArchive make_archive(std::vector<ArchiveRecord> records) {
    int members = 0;
    std::set<int> years;
    for (const auto& r : records) {
        members = std::max(members, static_cast<int>(r.members.size()));
        years.insert(static_cast<int>(r.validity_date.year()));
    }
    return ReforecastArchive(std::move(records), members, static_cast<int>(years.size()));
}

} // namespace detail

inline EnsembleForecasts forecasts_from_rows(const std::vector<EnsembleRow>& rows) {
    return detail::group_rows(rows, "forecasts");
}

// One archive per lead time found in the rows.
inline std::map<int, ReforecastArchive> archives_from_rows(const std::vector<EnsembleRow>& rows) {
    std::map<int, std::vector<ArchiveRecord>> by_lead;
    for (auto& [key, members] : detail::group_rows(rows, "reforecasts"))
        by_lead[key.lead_days].push_back({key.location, key.validity_date, std::move(members)});
    std::map<int, ReforecastArchive> out;
    for (auto& [lead, recs] : by_lead) out.emplace(lead, detail::make_archive(std::move(recs)));
    return out;
}

inline ReforecastArchive observations_from_rows(const std::vector<EnsembleRow>& rows) {
    std::vector<ArchiveRecord> recs;
    for (auto& [key, members] : detail::group_rows(rows, "observations")) {
        if (key.lead_days != 0 || members.size() != 1)
            fail(ErrorCode::ParseError, "observations must have lead 0 and a single member per location and date");
        recs.push_back({key.location, key.validity_date, std::move(members)});
    }
    return detail::make_archive(std::move(recs));
}

// ---------------------------------------------------------------------------
// Climate grids

inline std::string climate_header() {
    std::string h = "source,location,lead_days,day_of_year,sample_count,mean,stddev";
    char buf[8];
    for (std::size_t i = 0; i < PercentileGrid::kSize; ++i) {
        std::snprintf(buf, sizeof buf, ",p%03zu", i);
        h += buf;
    }
    return h;
}

namespace detail {

inline void append_climate(std::string& out, std::string_view source, int lead, const ClimateDistribution& c) {
    out += source;
    out += ',' + c.location + ',' + std::to_string(lead) + ',' + std::to_string(c.day_of_year) + ',' +
           std::to_string(c.sample_count) + ',' + format_number(c.mean) + ',' + format_number(c.stddev);
    for (double t : c.grid.thresholds()) out += ',' + format_number(t);
    out += '\n';
}

} // namespace detail

// Model climates are tagged "model" with their lead; observed climates "obs" with lead 0.
inline std::string climate_table_text(const ClimateSet& set) {
    std::string out = climate_header() + '\n';
    for (const auto& [key, c] : set.model) detail::append_climate(out, "model", std::get<0>(key), c);
    if (set.observed)
        for (const auto& [key, c] : *set.observed) detail::append_climate(out, "obs", 0, c);
    return out;
}

inline ClimateSet read_climate_table(const std::string& path) {
    ClimateSet set;
    auto observed = std::make_shared<ObsClimateTable>();
    for (const auto& row : read_csv(path, climate_header())) {
        const auto& f = row.fields;
        const int lead = parse_int(f[2], path, row.line);
        const int doy = parse_int(f[3], path, row.line);
        if (doy < 1 || doy > kDaysPerClimateYear) parse_error(path, row.line, "day_of_year out of range");
        std::array<double, PercentileGrid::kSize> t{};
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = parse_number(f[7 + i], path, row.line);
        ClimateDistribution c{PercentileGrid(t), parse_number(f[5], path, row.line),
                              parse_number(f[6], path, row.line), f[1], doy,
                              static_cast<std::size_t>(parse_int(f[4], path, row.line))};
        if (f[0] == "model") set.model.emplace(std::tuple{lead, f[1], doy}, std::move(c));
        else if (f[0] == "obs") observed->emplace(std::pair{f[1], doy}, std::move(c));
        else parse_error(path, row.line, "unknown climate source '" + f[0] + "'");
    }
    set.observed = std::move(observed);
    return set;
}

// ---------------------------------------------------------------------------
// Index fields

inline constexpr std::string_view kIndexHeader = "location,validity_date,lead_days,kind,value";

inline std::string index_table_text(std::span<const IndexField> fields) {
    std::vector<std::tuple<LocationId, Date, int, IndexKind, std::optional<double>>> rows;
    for (const auto& f : fields)
        for (const auto& [loc, v] : f.entries) rows.emplace_back(loc, f.validity_date, f.lead_days, f.kind, v.value);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
               std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
    });
    std::string out(kIndexHeader);
    out += '\n';
    for (const auto& [loc, date, lead, kind, value] : rows) {
        out += loc + ',' + format_date(date) + ',' + std::to_string(lead) + ',';
        out += to_string(kind);
        out += ',' + format_optional(value) + '\n';
    }
    return out;
}

// Fields ordered by (kind, lead, date).
inline std::vector<IndexField> read_index_table(const std::string& path) {
    std::map<std::tuple<IndexKind, int, Date>, IndexField> fields;
    for (const auto& row : read_csv(path, kIndexHeader)) {
        const auto& f = row.fields;
        Date date{};
        IndexKind kind{};
        try {
            date = parse_date(f[1]);
            kind = parse_index_kind(f[3]);
        } catch (const Error& e) {
            parse_error(path, row.line, e.what());
        }
        const int lead = parse_int(f[2], path, row.line);
        auto& field = fields[{kind, lead, date}];
        field.kind = kind;
        field.validity_date = date;
        field.lead_days = lead;
        if (!field.entries.emplace(f[0], IndexValue{kind, parse_optional(f[4], path, row.line)}).second)
            parse_error(path, row.line, "duplicate entry for " + f[0]);
    }
    std::vector<IndexField> out;
    for (auto& [key, field] : fields) out.push_back(std::move(field));
    return out;
}

} // namespace hiwx::io
