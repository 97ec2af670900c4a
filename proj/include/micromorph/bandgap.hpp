#pragma once

// Frequency coverage of propagating branches and the band-gaps left between them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "micromorph/core.hpp"
#include "micromorph/dispersion.hpp"
#include "micromorph/errors.hpp"

namespace micromorph {

/// Which waves must be absent for an interval to count as a gap.
///   Coupled  - longitudinal and transverse waves (the default)
///   Complete - longitudinal, transverse and uncoupled waves
enum class GapScope { Longitudinal, Transverse, Uncoupled, Coupled, Complete };

[[nodiscard]] inline std::string_view to_string(GapScope s)
{
    switch (s) {
    case GapScope::Longitudinal: return "longitudinal";
    case GapScope::Transverse: return "transverse";
    case GapScope::Uncoupled: return "uncoupled";
    case GapScope::Coupled: return "coupled";
    case GapScope::Complete: return "complete";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<GapScope> parse_scope(std::string_view s)
{
    for (GapScope g : {GapScope::Longitudinal, GapScope::Transverse, GapScope::Uncoupled,
                       GapScope::Coupled, GapScope::Complete}) {
        if (to_string(g) == s) return g;
    }
    return std::nullopt;
}

[[nodiscard]] inline std::vector<WaveBlock> blocks_for(GapScope s)
{
    switch (s) {
    case GapScope::Longitudinal: return {WaveBlock::Longitudinal};
    case GapScope::Transverse: return {WaveBlock::Transverse2, WaveBlock::Transverse3};
    case GapScope::Uncoupled: return {WaveBlock::Uncoupled};
    case GapScope::Coupled:
        return {WaveBlock::Longitudinal, WaveBlock::Transverse2, WaveBlock::Transverse3};
    case GapScope::Complete:
        return {kAllBlocks.begin(), kAllBlocks.end()};
    }
    return {};
}

struct CoverageMap {
    double omega_ceiling = 0.0;
    double delta_omega = 0.0;
    std::vector<std::uint8_t> bins;
    /// Bit (3 * block_index + branch) set when that branch touched the bin.
    std::vector<std::uint16_t> provenance;

    [[nodiscard]] std::size_t size() const { return bins.size(); }
    [[nodiscard]] bool occupied(std::size_t i) const { return bins[i] != 0; }

    [[nodiscard]] std::size_t bin_of(double omega) const
    {
        const auto i = static_cast<std::size_t>(std::floor(omega / delta_omega));
        return std::min(i, bins.size() - 1);
    }

    void mark(double a, double b, std::uint16_t tag)
    {
        double lo = std::min(a, b);
        double hi = std::max(a, b);
        if (lo > omega_ceiling || hi < 0.0) return;
        lo = std::max(lo, 0.0);
        hi = std::min(hi, omega_ceiling);
        for (std::size_t i = bin_of(lo), last = bin_of(hi); i <= last; ++i) {
            bins[i] = 1;
            provenance[i] |= tag;
        }
    }
};

namespace detail {

inline bool same_parameters(const DispersionCurve& a, const DispersionCurve& b)
{
    return a.model == b.model && a.elastic == b.elastic && a.inertia == b.inertia;
}

} // namespace detail

/// Occupancy of [0, omega_ceiling] by every branch of `curves`.
///
/// Consecutive samples of a branch mark every bin between them, so coarse
/// k-sampling cannot open false gaps. Beyond k_max a flattened branch adds
/// nothing; any other branch is extended along its last slope to the edge of
/// the window.
[[nodiscard]] inline CoverageMap coverage(std::span<const DispersionCurve> curves,
                                          double omega_ceiling, double delta_omega)
{
    if (curves.empty()) throw InputError("coverage: no dispersion curves");
    if (!(omega_ceiling > 0.0) || !(delta_omega > 0.0)) {
        throw InputError("coverage: ceiling and bin width must be positive");
    }
    for (const auto& c : curves) {
        if (!detail::same_parameters(c, curves.front())) {
            throw InconsistentInputs("coverage: curves come from different parameter sets");
        }
    }

    CoverageMap map;
    map.omega_ceiling = omega_ceiling;
    map.delta_omega = delta_omega;
    const auto nbins = static_cast<std::size_t>(std::ceil(omega_ceiling / delta_omega));
    map.bins.assign(nbins, 0);
    map.provenance.assign(nbins, 0);

    for (const auto& curve : curves) {
        for (std::size_t b = 0; b < 3; ++b) {
            const auto tag = static_cast<std::uint16_t>(1u << (3 * block_index(curve.block) + b));
            const auto& w = curve.branches[b].omegas;
            map.mark(w.front(), w.front(), tag);
            for (std::size_t j = 1; j < w.size(); ++j) map.mark(w[j - 1], w[j], tag);

            if (!curve.asymptote_flags[b] && w.size() >= 2) {
                const double slope = w.back() - w[w.size() - 2];
                if (slope > 0.0) map.mark(w.back(), omega_ceiling, tag);
                else if (slope < 0.0) map.mark(0.0, w.back(), tag);
            }
        }
    }
    return map;
}

struct Gap {
    double omega_lo = 0.0; // [rad/s]
    double omega_hi = 0.0;

    [[nodiscard]] double width() const { return omega_hi - omega_lo; }
};

/// Maximal empty runs of `map` at least `min_width` wide, ascending.
[[nodiscard]] inline std::vector<Gap> find_gaps(const CoverageMap& map, double min_width)
{
    std::vector<Gap> gaps;
    std::size_t i = 0;
    while (i < map.size()) {
        if (map.occupied(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < map.size() && !map.occupied(j)) ++j;
        Gap g{static_cast<double>(i) * map.delta_omega,
              std::min(static_cast<double>(j) * map.delta_omega, map.omega_ceiling)};
        if (g.width() >= min_width) gaps.push_back(g);
        i = j;
    }
    return gaps;
}

struct GapOptions {
    std::size_t points = kDefaultGridPoints;
    double k_max = 0.0;         // 0: 100 / L_c
    double omega_ceiling = 0.0; // 0: 1.5 x largest cutoff of all blocks
    double delta_omega = 0.0;   // 0: omega_ceiling / 4000
    double min_gap_width = 0.0; // 0: omega_ceiling / 400
    SweepOptions sweep;
};

struct GapReport {
    std::vector<Gap> gaps;
    GapScope scope = GapScope::Coupled;
    ModelKind model{};
    ElasticParams elastic;
    InertiaParams inertia;
    // resolved detection settings
    std::size_t points = 0;
    double k_max = 0.0;
    double omega_ceiling = 0.0;
    double delta_omega = 0.0;
    double min_gap_width = 0.0;

    [[nodiscard]] std::size_t count() const { return gaps.size(); }
};

/// Fills the zero-valued fields of `opt` with their defaults.
[[nodiscard]] inline GapOptions resolve(GapOptions opt, ModelKind model, const ElasticParams& e,
                                        const InertiaParams& in)
{
    if (opt.k_max <= 0.0) opt.k_max = KGrid::default_for(e).k_max();
    if (opt.omega_ceiling <= 0.0) opt.omega_ceiling = 1.5 * largest_cutoff(cutoffs(model, e, in));
    if (opt.delta_omega <= 0.0) opt.delta_omega = opt.omega_ceiling / 4000.0;
    if (opt.min_gap_width <= 0.0) opt.min_gap_width = opt.omega_ceiling / 400.0;
    return opt;
}

[[nodiscard]] inline GapReport detect_gaps(ModelKind model, const ElasticParams& e,
                                           const InertiaParams& in, GapScope scope,
                                           const GapOptions& options = {})
{
    require_valid(e, in);
    const GapOptions opt = resolve(options, model, e, in);
    const KGrid grid = KGrid::linear(opt.points, opt.k_max);

    std::vector<DispersionCurve> curves;
    for (WaveBlock b : blocks_for(scope)) curves.push_back(sweep(model, e, in, b, grid, opt.sweep));

    const CoverageMap map = coverage(curves, opt.omega_ceiling, opt.delta_omega);

    GapReport r;
    r.gaps = find_gaps(map, opt.min_gap_width);
    r.scope = scope;
    r.model = model;
    r.elastic = e;
    r.inertia = in;
    r.points = opt.points;
    r.k_max = opt.k_max;
    r.omega_ceiling = opt.omega_ceiling;
    r.delta_omega = opt.delta_omega;
    r.min_gap_width = opt.min_gap_width;
    return r;
}

} // namespace micromorph
