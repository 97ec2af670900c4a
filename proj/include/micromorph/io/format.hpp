#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

namespace micromorph::io {

/// Shortest round-trip decimal form, independent of the C locale.
[[nodiscard]] inline std::string format_number(double v)
{
    if (v == 0.0) return "0"; // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Angular frequency as emitted: rad/s, or Hz when requested.
[[nodiscard]] inline double emit_frequency(double omega, bool hertz)
{
    return hertz ? omega / (2.0 * std::numbers::pi) : omega;
}

[[nodiscard]] inline std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace micromorph::io
