#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hiwx/calendar.hpp"
#include "hiwx/dataset.hpp"
#include "hiwx/error.hpp"
#include "hiwx/io/csv.hpp"
#include "hiwx/io/tables.hpp"

namespace hiwx::io {

inline constexpr int kManifestVersion = 1;

struct DatasetManifest {
    int format_version = kManifestVersion;
    VariableKind variable = VariableKind::Precipitation;
    std::string units;
    std::vector<LocationId> locations;
    Date start_date{};
    Date end_date{};
    int ensemble_size = 0;
    std::vector<int> lead_days;
    struct Files {
        std::string forecasts = "forecasts.csv";
        std::string reforecasts = "reforecasts.csv";
        std::string observations = "observations.csv";
    } files;
    struct RowCounts {
        std::size_t forecasts = 0;
        std::size_t reforecasts = 0;
        std::size_t observations = 0;
    } row_counts;
};

inline nlohmann::ordered_json to_json(const DatasetManifest& m) {
    nlohmann::ordered_json j;
    j["format_version"] = m.format_version;
    j["variable"] = std::string(to_string(m.variable));
    j["units"] = m.units;
    j["locations"] = m.locations;
    j["start_date"] = format_date(m.start_date);
    j["end_date"] = format_date(m.end_date);
    j["ensemble_size"] = m.ensemble_size;
    j["lead_days"] = m.lead_days;
    j["files"] = {{"forecasts", m.files.forecasts},
                  {"reforecasts", m.files.reforecasts},
                  {"observations", m.files.observations}};
    j["row_counts"] = {{"forecasts", m.row_counts.forecasts},
                       {"reforecasts", m.row_counts.reforecasts},
                       {"observations", m.row_counts.observations}};
    return j;
}

inline DatasetManifest manifest_from_json(const nlohmann::json& j) {
    try {
        DatasetManifest m;
        m.format_version = j.at("format_version").get<int>();
        if (m.format_version != kManifestVersion)
            fail(ErrorCode::ManifestMismatch, "unsupported manifest format version " + std::to_string(m.format_version));
        m.variable = parse_variable_kind(j.at("variable").get<std::string>());
        m.units = j.at("units").get<std::string>();
        m.locations = j.at("locations").get<std::vector<LocationId>>();
        m.start_date = parse_date(j.at("start_date").get<std::string>());
        m.end_date = parse_date(j.at("end_date").get<std::string>());
        m.ensemble_size = j.at("ensemble_size").get<int>();
        m.lead_days = j.at("lead_days").get<std::vector<int>>();
        const auto& f = j.at("files");
        m.files = {f.at("forecasts").get<std::string>(), f.at("reforecasts").get<std::string>(),
                   f.at("observations").get<std::string>()};
        const auto& c = j.at("row_counts");
        m.row_counts = {c.at("forecasts").get<std::size_t>(), c.at("reforecasts").get<std::size_t>(),
                        c.at("observations").get<std::size_t>()};
        if (days_between(m.start_date, m.end_date) < 0)
            fail(ErrorCode::ManifestMismatch, "manifest end_date precedes start_date");
        return m;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("manifest: ") + e.what());
    }
}

inline DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open manifest " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
    return manifest_from_json(j);
}

// Loads the three tables a manifest references, checking that the files
// exist and hold the advertised number of rows.
inline Dataset load_dataset(const std::filesystem::path& manifest_path) {
    const auto m = read_manifest(manifest_path);
    const auto dir = manifest_path.parent_path();
    auto load = [&](const std::string& name, std::size_t expected) {
        const auto p = dir / name;
        if (!std::filesystem::exists(p)) fail(ErrorCode::ManifestMismatch, "referenced file missing: " + p.string());
        auto rows = read_ensemble_table(p.string());
        if (rows.size() != expected)
            fail(ErrorCode::ManifestMismatch, p.string() + " has " + std::to_string(rows.size()) +
                                                  " rows, manifest says " + std::to_string(expected));
        return rows;
    };

    Dataset ds;
    ds.variable = m.variable;
    ds.units = m.units;
    ds.locations = m.locations;
    ds.start_date = m.start_date;
    ds.days = days_between(m.start_date, m.end_date) + 1;
    ds.ensemble_size = m.ensemble_size;
    ds.lead_days = m.lead_days;
    ds.forecasts = forecasts_from_rows(load(m.files.forecasts, m.row_counts.forecasts));
    ds.reforecasts = archives_from_rows(load(m.files.reforecasts, m.row_counts.reforecasts));
    ds.observations = observations_from_rows(load(m.files.observations, m.row_counts.observations));

    const std::set<LocationId> known(m.locations.begin(), m.locations.end());
    for (const auto& [key, members] : ds.forecasts)
        if (!known.contains(key.location))
            fail(ErrorCode::ManifestMismatch, "forecast location " + key.location + " not listed in manifest");
    return ds;
}

inline DatasetManifest manifest_for(const Dataset& ds) {
    DatasetManifest m;
    m.variable = ds.variable;
    m.units = ds.units;
    m.locations = ds.locations;
    m.start_date = ds.start_date;
    m.end_date = add_days(ds.start_date, ds.days - 1);
    m.ensemble_size = ds.ensemble_size;
    m.lead_days = ds.lead_days;
    return m;
}

// Stages manifest.json and the three tables of `ds` under `dir`.
inline void stage_dataset(OutputSet& out, const std::filesystem::path& dir, const Dataset& ds) {
    auto m = manifest_for(ds);
    const auto forecast_rows = rows_from_forecasts(ds.forecasts);
    std::vector<EnsembleRow> reforecast_rows;
    for (const auto& [lead, archive] : ds.reforecasts) {
        auto rows = rows_from_archive(archive, lead);
        reforecast_rows.insert(reforecast_rows.end(), rows.begin(), rows.end());
    }
    const auto obs_rows = rows_from_archive(ds.observations, 0);
    m.row_counts = {forecast_rows.size(), reforecast_rows.size(), obs_rows.size()};
    out.add(dir / m.files.forecasts, ensemble_table_text(forecast_rows));
    out.add(dir / m.files.reforecasts, ensemble_table_text(std::move(reforecast_rows)));
    out.add(dir / m.files.observations, ensemble_table_text(obs_rows));
    out.add(dir / "manifest.json", to_json(m).dump(2) + '\n');
}

inline void write_dataset(const std::filesystem::path& dir, const Dataset& ds) {
    OutputSet out;
    stage_dataset(out, dir, ds);
    out.commit();
}

} // namespace hiwx::io
