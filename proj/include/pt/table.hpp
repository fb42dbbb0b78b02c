#pragma once

// Plot-ready tables with a deterministic text encoding: 17 significant
// digits, '.' decimal separator, no locale dependence.
//
// CSV:  "# key=value key=value ..." parameter echo, a header row, data rows.
// JSON: {"params": {...}, "rows": [{column: value, ...}, ...]} on one line.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace pt {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

enum class Format { csv, json };

struct Table {
    std::vector<std::pair<std::string, Cell>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string format_number(double value)
{
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string csv_cell(const Cell& c)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

inline std::string json_cell(const Cell& c)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(double v) const { return std::isfinite(v) ? format_number(v) : "null"; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Table& t)
{
    os << '#';
    for (const auto& [key, value] : t.params) {
        os << ' ' << key << '=' << detail::csv_cell(value);
    }
    os << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << detail::csv_cell(row[i]);
        }
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const Table& t)
{
    os << "{\"params\":{";
    for (std::size_t i = 0; i < t.params.size(); ++i) {
        os << (i ? "," : "") << nlohmann::json(t.params[i].first).dump() << ':' << detail::json_cell(t.params[i].second);
    }
    os << "},\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? "," : "") << '{';
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << nlohmann::json(t.columns[i]).dump() << ':' << detail::json_cell(t.rows[r][i]);
        }
        os << '}';
    }
    os << "]}\n";
}

inline void write_table(std::ostream& os, const Table& t, Format f)
{
    if (f == Format::csv) {
        write_csv(os, t);
    } else {
        write_json(os, t);
    }
}

}  // namespace pt
