#pragma once

// Self-contained SVG 1.1 dispersion diagrams: one panel per block, linear
// axes, one polyline per branch.

#include <array>
#include <charconv>
#include <ostream>
#include <span>
#include <string>

#include "micromorph/dispersion.hpp"
#include "micromorph/io/format.hpp"

namespace micromorph::io {

struct SvgOptions {
    double panel_width = 320.0;
    double panel_height = 260.0;
    double omega_ceiling = 0.0; // 0: 1.5 x largest cutoff shown
    bool hertz = false;
};

namespace detail {

inline std::string fixed2(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

inline std::string_view panel_title(WaveBlock b)
{
    switch (b) {
    case WaveBlock::Longitudinal: return "longitudinal";
    case WaveBlock::Transverse2:
    case WaveBlock::Transverse3: return "transverse";
    case WaveBlock::Uncoupled: return "uncoupled";
    }
    return "";
}

inline constexpr std::array<std::string_view, 3> kBranchColors{"#1f4e9c", "#c0392b", "#1e8449"};

} // namespace detail

/// Writes `curves` side by side (the CLI passes uncoupled, longitudinal, transverse).
inline void write_svg(std::ostream& os, std::span<const DispersionCurve> curves, const SvgOptions& opt)
{
    using detail::fixed2;
    constexpr double margin_left = 64.0;
    constexpr double margin_right = 16.0;
    constexpr double margin_top = 28.0;
    constexpr double margin_bottom = 44.0;

    double ceiling = opt.omega_ceiling;
    if (ceiling <= 0.0) {
        for (const auto& c : curves)
            for (double w : c.cutoffs) ceiling = std::max(ceiling, 1.5 * w);
        if (ceiling <= 0.0) ceiling = 1.0;
    }
    const double y_top = emit_frequency(ceiling, opt.hertz);

    const double pw = opt.panel_width;
    const double ph = opt.panel_height;
    const double total_w = static_cast<double>(curves.size()) * pw;

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed2(total_w)
       << "\" height=\"" << fixed2(ph) << "\" viewBox=\"0 0 " << fixed2(total_w) << ' ' << fixed2(ph)
       << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << fixed2(total_w) << "\" height=\"" << fixed2(ph)
       << "\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < curves.size(); ++p) {
        const DispersionCurve& c = curves[p];
        const double x0 = static_cast<double>(p) * pw + margin_left;
        const double x1 = static_cast<double>(p + 1) * pw - margin_right;
        const double y0 = ph - margin_bottom; // omega = 0
        const double y1 = margin_top;         // omega = ceiling
        const double k_max = c.grid.k_max();

        os << "<g id=\"panel-" << p << "\">\n"
           << "<clipPath id=\"clip-" << p << "\"><rect x=\"" << fixed2(x0) << "\" y=\"" << fixed2(y1)
           << "\" width=\"" << fixed2(x1 - x0) << "\" height=\"" << fixed2(y0 - y1)
           << "\"/></clipPath>\n"
           << "<text x=\"" << fixed2(0.5 * (x0 + x1)) << "\" y=\"18\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"13\">" << detail::panel_title(c.block) << "</text>\n"
           << "<line x1=\"" << fixed2(x0) << "\" y1=\"" << fixed2(y0) << "\" x2=\"" << fixed2(x1)
           << "\" y2=\"" << fixed2(y0) << "\" stroke=\"black\"/>\n"
           << "<line x1=\"" << fixed2(x0) << "\" y1=\"" << fixed2(y0) << "\" x2=\"" << fixed2(x0)
           << "\" y2=\"" << fixed2(y1) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << fixed2(0.5 * (x0 + x1)) << "\" y=\"" << fixed2(ph - 10.0)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">k [rad/m] 0 .. "
           << format_number(k_max) << "</text>\n"
           << "<text x=\"" << fixed2(x0 - 6.0) << "\" y=\"" << fixed2(y1 + 4.0)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
           << format_number(y_top) << "</text>\n"
           << "<text x=\"" << fixed2(x0 - 6.0) << "\" y=\"" << fixed2(y0)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n"
           << "<text x=\"14\" y=\"" << fixed2(0.5 * (y0 + y1)) << "\" transform=\"rotate(-90 14 "
           << fixed2(0.5 * (y0 + y1)) << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           << "font-size=\"11\">" << (opt.hertz ? "f [Hz]" : "omega [rad/s]") << "</text>\n";

        for (std::size_t b = 0; b < 3; ++b) {
            const Branch& br = c.branches[b];
            os << "<polyline data-branch=\"" << br.label << "\" fill=\"none\" stroke=\""
               << detail::kBranchColors[b] << "\" stroke-width=\"1.5\" clip-path=\"url(#clip-" << p
               << ")\" points=\"";
            for (std::size_t j = 0; j < br.omegas.size(); ++j) {
                const double x = x0 + (x1 - x0) * c.grid[j] / k_max;
                // far-off-scale samples are pinned just outside the clip box
                const double frac = std::min(emit_frequency(br.omegas[j], opt.hertz) / y_top, 1.05);
                const double y = y0 - (y0 - y1) * frac;
                if (j != 0) os << ' ';
                os << fixed2(x) << ',' << fixed2(y);
            }
            os << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
}

} // namespace micromorph::io
