#pragma once

// Minimal RFC 4180 writer.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace randsurf::cli {

inline std::string csv_field(std::string_view v)
{
    if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << "\r\n";
}

} // namespace randsurf::cli
