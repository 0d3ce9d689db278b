#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <string>
#include <string_view>

#include "hiwx/error.hpp"

namespace hiwx {

using Date = std::chrono::year_month_day;

inline std::chrono::sys_days to_days(Date d) { return std::chrono::sys_days{d}; }

inline Date add_days(Date d, int n) {
    return Date{to_days(d) + std::chrono::days{n}};
}

// Signed number of days from a to b.
inline int days_between(Date a, Date b) {
    return static_cast<int>((to_days(b) - to_days(a)).count());
}

// ISO-8601 calendar date, YYYY-MM-DD.
inline Date parse_date(std::string_view text) {
    auto bad = [&] { fail(ErrorCode::ParseError, "invalid date '" + std::string(text) + "'"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') bad();
    int y = 0;
    unsigned m = 0, d = 0;
    auto field = [&](std::size_t pos, std::size_t len, auto& out) {
        auto first = text.data() + pos;
        auto [ptr, ec] = std::from_chars(first, first + len, out);
        if (ec != std::errc{} || ptr != first + len) bad();
    };
    field(0, 4, y);
    field(5, 2, m);
    field(8, 2, d);
    Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) bad();
    return date;
}

inline std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

inline constexpr int kDaysPerClimateYear = 365;

// Day of year on a fixed 365-day calendar: Feb 29 shares day 59 with Feb 28
// and the remaining days of a leap year shift back by one.
inline int day_of_year(Date d) {
    using namespace std::chrono;
    const auto jan1 = sys_days{d.year() / January / 1};
    int doy = static_cast<int>((to_days(d) - jan1).count()) + 1;
    if (d.year().is_leap() && doy >= 60) doy -= 1;
    return doy;
}

// Circular distance between two days of year, ignoring the year.
inline int day_of_year_distance(int a, int b) {
    int d = a > b ? a - b : b - a;
    return d < kDaysPerClimateYear - d ? d : kDaysPerClimateYear - d;
}

} // namespace hiwx
