#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiwx/calendar.hpp"
#include "hiwx/climatology.hpp"
#include "hiwx/error.hpp"

namespace hiwx {

enum class VariableKind { Gaussian, Precipitation };

constexpr std::string_view to_string(VariableKind v) {
    return v == VariableKind::Gaussian ? "gaussian" : "precipitation";
}

inline VariableKind parse_variable_kind(std::string_view text) {
    if (text == "gaussian") return VariableKind::Gaussian;
    if (text == "precipitation") return VariableKind::Precipitation;
    fail(ErrorCode::ParseError, "unknown variable kind '" + std::string(text) + "'");
}

struct ForecastKey {
    LocationId location;
    Date validity_date{};
    int lead_days = 0;

    friend auto operator<=>(const ForecastKey&, const ForecastKey&) = default;
};

using EnsembleForecasts = std::map<ForecastKey, std::vector<double>>;

// Everything a verification experiment reads: ensemble forecasts over a
// validity period, one reforecast archive per lead time, and observations.
struct Dataset {
    VariableKind variable = VariableKind::Precipitation;
    std::string units;
    std::vector<LocationId> locations;
    Date start_date{};
    int days = 0;
    int ensemble_size = 0;
    std::vector<int> lead_days;
    EnsembleForecasts forecasts;
    std::map<int, ReforecastArchive> reforecasts;
    ReforecastArchive observations;

    std::vector<Date> validity_dates() const {
        std::vector<Date> out;
        for (int i = 0; i < days; ++i) out.push_back(add_days(start_date, i));
        return out;
    }

    // Lower bound used by the crossing-point scan for bounded variables.
    std::optional<double> natural_lower_bound() const {
        if (variable == VariableKind::Precipitation) return 0.0;
        return std::nullopt;
    }

    std::optional<double> observation(const LocationId& location, Date date) const {
        for (std::size_t idx : observations.records_on(location, day_of_year(date))) {
            const auto& r = observations.records()[idx];
            if (r.validity_date == date) return r.members.front();
        }
        return std::nullopt;
    }
};

} // namespace hiwx
