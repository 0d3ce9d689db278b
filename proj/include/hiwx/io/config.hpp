#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "hiwx/calendar.hpp"
#include "hiwx/error.hpp"
#include "hiwx/synthgen.hpp"

namespace hiwx::io {

namespace detail {

inline std::map<int, double> per_lead(const nlohmann::json& j) {
    std::map<int, double> out;
    for (const auto& [key, value] : j.items()) {
        std::size_t used = 0;
        int lead = 0;
        try {
            lead = std::stoi(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size()) fail(ErrorCode::BadConfig, "per-lead keys must be integers, got '" + key + "'");
        out[lead] = value.get<double>();
    }
    return out;
}

} // namespace detail

// Scenario from a JSON object; absent keys keep their defaults, unknown keys
// are rejected.
inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known{
        "locations",  "start_date", "days",         "ensemble_size",  "reforecast_members", "runs_per_week",
        "years",      "lead_days",  "predictability_days", "error_variance", "dispersion",  "bias",
        "autocorrelation", "variable", "dry_probability", "gamma_shape", "scale_min", "scale_max",
        "mean_min",   "mean_max",   "window_days",  "seed"};
    if (!j.is_object()) fail(ErrorCode::BadConfig, "scenario config must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) fail(ErrorCode::BadConfig, "unknown scenario key '" + key + "'");

    ScenarioConfig c;
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
        };
        get("locations", c.locations);
        if (j.contains("start_date")) c.start_date = parse_date(j.at("start_date").get<std::string>());
        get("days", c.days);
        get("ensemble_size", c.ensemble_size);
        get("reforecast_members", c.reforecast_members);
        get("runs_per_week", c.runs_per_week);
        get("years", c.years);
        get("lead_days", c.lead_days);
        get("predictability_days", c.predictability_days);
        if (j.contains("error_variance")) c.error_variance = detail::per_lead(j.at("error_variance"));
        if (j.contains("dispersion")) c.dispersion = detail::per_lead(j.at("dispersion"));
        if (j.contains("bias")) c.bias = detail::per_lead(j.at("bias"));
        get("autocorrelation", c.autocorrelation);
        if (j.contains("variable")) c.variable = parse_variable_kind(j.at("variable").get<std::string>());
        get("dry_probability", c.dry_probability);
        get("gamma_shape", c.gamma_shape);
        get("scale_min", c.scale_min);
        get("scale_max", c.scale_max);
        get("mean_min", c.mean_min);
        get("mean_max", c.mean_max);
        get("window_days", c.window_days);
        get("seed", c.seed);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::BadConfig, std::string("scenario config: ") + e.what());
    }
    c.validate();
    return c;
}

inline ScenarioConfig read_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

} // namespace hiwx::io
