#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace ccluster {

// Shortest round-trip decimal representation. Used everywhere a double is
// serialized so that re-parsing an exported file reproduces the exact value.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Fixed-precision formatting for SVG coordinates.
inline std::string format_fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return std::string(buf);
}

}  // namespace ccluster
