#pragma once

#include <charconv>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hiwx/error.hpp"

namespace hiwx::io {

inline constexpr std::string_view kMissing = "NA";

// Shortest decimal text that reads back to the same double.
inline std::string format_number(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) fail(ErrorCode::IoError, "cannot format number");
    return std::string(buf, ptr);
}

inline std::string format_optional(const std::optional<double>& x) {
    return x ? format_number(*x) : std::string(kMissing);
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

[[noreturn]] inline void parse_error(const std::string& path, std::size_t line, const std::string& what) {
    fail(ErrorCode::ParseError, path + ":" + std::to_string(line) + ": " + what);
}

inline double parse_number(std::string_view text, const std::string& path, std::size_t line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        parse_error(path, line, "invalid number '" + std::string(text) + "'");
    return v;
}

inline std::optional<double> parse_optional(std::string_view text, const std::string& path, std::size_t line) {
    if (text == kMissing) return std::nullopt;
    return parse_number(text, path, line);
}

inline int parse_int(std::string_view text, const std::string& path, std::size_t line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        parse_error(path, line, "invalid integer '" + std::string(text) + "'");
    return v;
}

// Reads a comma-separated file. Lines starting with '#' are comments; the
// first other line must equal `header`.
inline std::vector<CsvRow> read_csv(const std::string& path, std::string_view header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open " + path);
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    const std::size_t columns = split(header).size();
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            if (line != header) parse_error(path, lineno, "expected header '" + std::string(header) + "'");
            have_header = true;
            continue;
        }
        auto parts = split(line);
        if (parts.size() != columns)
            parse_error(path, lineno, "expected " + std::to_string(columns) + " fields, got " +
                                          std::to_string(parts.size()));
        CsvRow row{lineno, {}};
        row.fields.reserve(parts.size());
        for (auto p : parts) row.fields.emplace_back(p);
        rows.push_back(std::move(row));
    }
    if (!have_header) parse_error(path, lineno, "missing header");
    return rows;
}

// Output files staged next to their destination and moved into place only
// on commit(); anything not committed is deleted.
class OutputSet {
public:
    OutputSet() = default;
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;

    ~OutputSet() {
        if (committed_) return;
        for (const auto& [path, text] : pending_) {
            std::error_code ec;
            std::filesystem::remove(staging(path), ec);
        }
    }

    void add(const std::filesystem::path& path, std::string contents) { pending_[path] = std::move(contents); }

    void commit() {
        for (const auto& [path, text] : pending_) {
            if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
            std::ofstream out(staging(path), std::ios::binary | std::ios::trunc);
            out << text;
            out.close();
            if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
        }
        for (const auto& [path, text] : pending_) {
            std::error_code ec;
            std::filesystem::rename(staging(path), path, ec);
            if (ec) fail(ErrorCode::IoError, "cannot move output into place: " + path.string());
        }
        committed_ = true;
    }

private:
    static std::filesystem::path staging(const std::filesystem::path& p) {
        auto s = p;
        s += ".partial";
        return s;
    }

    std::map<std::filesystem::path, std::string> pending_;
    bool committed_ = false;
};

} // namespace hiwx::io
