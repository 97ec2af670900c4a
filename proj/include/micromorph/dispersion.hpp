#pragma once

// Wavenumber sweeps of one invariant block: eigenvalues are continued across
// the grid by eigenvector overlap, named at k = 0, and annotated with the
// dominant vibrational mode of each sample.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "micromorph/assembly.hpp"
#include "micromorph/core.hpp"
#include "micromorph/eigensolve.hpp"
#include "micromorph/errors.hpp"

namespace micromorph {

inline constexpr std::size_t kMinGridPoints = 50;
inline constexpr std::size_t kDefaultGridPoints = 400;
inline constexpr double kDefaultMixedThreshold = 1.25;
/// Reported ratio when the runner-up component vanishes.
inline constexpr double kModeRatioCap = 1.0e12;

class KGrid {
public:
    KGrid() = default;

    /// Throws DegenerateGrid unless values start at 0, increase strictly and
    /// have at least kMinGridPoints entries.
    explicit KGrid(std::vector<double> values) : values_(std::move(values)) { check(); }

    [[nodiscard]] static KGrid linear(std::size_t points, double k_max)
    {
        if (points < kMinGridPoints) {
            throw DegenerateGrid("KGrid: at least " + std::to_string(kMinGridPoints) +
                                 " points required, got " + std::to_string(points));
        }
        if (!(k_max > 0.0) || !std::isfinite(k_max)) {
            throw DegenerateGrid("KGrid: k_max must be positive and finite");
        }
        std::vector<double> v(points);
        for (std::size_t i = 0; i < points; ++i) {
            v[i] = k_max * static_cast<double>(i) / static_cast<double>(points - 1);
        }
        return KGrid(std::move(v));
    }

    /// 400 points up to 100 / L_c, or 1e5 rad/m when L_c vanishes.
    [[nodiscard]] static KGrid default_for(const ElasticParams& e)
    {
        const double k_max = e.L_c > 0.0 ? 100.0 / e.L_c : 1.0e5;
        return linear(kDefaultGridPoints, k_max);
    }

    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double k_max() const { return values_.back(); }

    friend bool operator==(const KGrid&, const KGrid&) = default;

private:
    void check() const
    {
        if (values_.size() < kMinGridPoints) {
            throw DegenerateGrid("KGrid: at least " + std::to_string(kMinGridPoints) +
                                 " points required, got " + std::to_string(values_.size()));
        }
        if (values_.front() != 0.0) throw DegenerateGrid("KGrid: values[0] must be 0");
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (!(values_[i] > values_[i - 1])) {
                throw DegenerateGrid("KGrid: values must be strictly increasing");
            }
        }
    }

    std::vector<double> values_;
};

struct ModeMarker {
    static constexpr std::string_view kMixed = "Mixed";

    std::string_view dominant = kMixed; // one of the block's DOF labels, or kMixed
    double ratio = 1.0;                 // |largest| / |second largest| component

    [[nodiscard]] bool mixed() const { return dominant == kMixed; }
};

/// Dominant component of a block eigenvector; Mixed when the top two
/// magnitudes are within `threshold` of each other.
[[nodiscard]] inline ModeMarker classify_mode(const BlockVector& v, WaveBlock block,
                                              double threshold = kDefaultMixedThreshold)
{
    std::array<double, 3> mag{std::abs(v(0)), std::abs(v(1)), std::abs(v(2))};
    const auto top = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    if (mag[top] == 0.0) throw ZeroVector("classify_mode: zero eigenvector");

    double second = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i != top) second = std::max(second, mag[i]);
    }
    ModeMarker m;
    m.ratio = second > 0.0 ? std::min(mag[top] / second, kModeRatioCap) : kModeRatioCap;
    m.dominant = m.ratio >= threshold ? dof_labels(block)[top] : ModeMarker::kMixed;
    return m;
}

struct Branch {
    std::string label;
    std::vector<double> omegas;       // [rad/s], one per grid point
    std::vector<BlockVector> vectors; // M(k)-normalized eigenvectors
    std::vector<ModeMarker> modes;
};

struct DispersionCurve {
    ModelKind model{};
    ElasticParams elastic;
    InertiaParams inertia;
    WaveBlock block{};
    KGrid grid;
    std::array<Branch, 3> branches;
    std::vector<double> cutoffs; // nonzero omega(0), ascending
    std::array<bool, 3> asymptote_flags{};

    [[nodiscard]] const Branch* find(std::string_view label) const
    {
        for (const auto& b : branches) {
            if (b.label == label) return &b;
        }
        return nullptr;
    }
};

struct SweepOptions {
    double mixed_threshold = kDefaultMixedThreshold;
};

namespace detail {

// Components scaled by sqrt(M_ii): comparable kinetic-energy shares across
// displacement and micro-distortion amplitudes. M is diagonal in block coordinates.
inline BlockVector energy_weighted(const BlockVector& v, const BlockMatrix& M)
{
    BlockVector y;
    for (int i = 0; i < 3; ++i) y(i) = std::sqrt(M(i, i).real()) * v(i);
    return y;
}

inline bool coupled(WaveBlock b) { return b != WaveBlock::Uncoupled; }

// Branch names for the eigenpairs of the k = 0 problem, indexed like `sol`.
inline std::array<std::string, 3> k0_labels(WaveBlock block, const EigenSolution& sol)
{
    std::array<std::string, 3> names;
    if (coupled(block)) {
        const std::string a = block == WaveBlock::Longitudinal ? "LA" : "TA";
        const std::string o = block == WaveBlock::Longitudinal ? "LO" : "TO";

        // The displacement amplitude decouples at k = 0; its mode is the acoustic one.
        int acoustic = -1;
        double best = -1.0;
        for (int j = 0; j < 3; ++j) {
            const double share = std::abs(sol.vectors(0, j)) / sol.vectors.col(j).norm();
            if (share > best) {
                best = share;
                acoustic = j;
            }
        }
        int optic = 1;
        for (int j = 0; j < 3; ++j) { // sol is ascending, so optic numbering follows cutoffs
            names[static_cast<std::size_t>(j)] = j == acoustic ? a : o + std::to_string(optic++);
        }
        return names;
    }

    // Uncoupled: shear, rotational and constant-volume micro modes by dominant DOF.
    static constexpr std::array<std::string_view, 3> kNames{"TSO", "TRO", "TCVO"};
    std::array<bool, 3> taken{};
    std::array<bool, 3> done{};
    for (int round = 0; round < 3; ++round) {
        double best = -1.0;
        int bj = 0;
        int bi = 0;
        for (int j = 0; j < 3; ++j) {
            if (done[static_cast<std::size_t>(j)]) continue;
            for (int i = 0; i < 3; ++i) {
                if (taken[static_cast<std::size_t>(i)]) continue;
                const double m = std::abs(sol.vectors(i, j));
                if (m > best) {
                    best = m;
                    bj = j;
                    bi = i;
                }
            }
        }
        done[static_cast<std::size_t>(bj)] = true;
        taken[static_cast<std::size_t>(bi)] = true;
        names[static_cast<std::size_t>(bj)] = std::string(kNames[static_cast<std::size_t>(bi)]);
    }
    return names;
}

inline bool is_acoustic_label(std::string_view label) { return label == "LA" || label == "TA"; }

inline EigenSolution solve_block(const BlockSystem& bs, double k)
{
    return general_eig(bs.stiffness(k), bs.mass(k));
}

} // namespace detail

/// True when the branch has flattened over the last 20 % of the grid:
/// |w(k_max) - w(0.8 k_max)| / w(k_max) < 1e-3 (linear interpolation at 0.8 k_max).
[[nodiscard]] inline bool detect_asymptote(const Branch& branch, const KGrid& grid)
{
    if (branch.omegas.size() != grid.size() || grid.size() < 2) {
        throw InputError("detect_asymptote: branch does not match grid");
    }
    const auto& w = branch.omegas;
    const double top = w.back();
    if (!(top > 0.0)) return false;
    const double k80 = 0.8 * grid.k_max();
    const auto it = std::lower_bound(grid.values().begin(), grid.values().end(), k80);
    const auto hi = static_cast<std::size_t>(it - grid.values().begin());
    const std::size_t lo = hi == 0 ? 0 : hi - 1;
    const double t = hi == lo ? 0.0 : (k80 - grid[lo]) / (grid[hi] - grid[lo]);
    const double w80 = w[lo] + t * (w[hi] - w[lo]);
    return std::abs(top - w80) / top < 1.0e-3;
}

/// Per-sample dispersion of one block over `grid`.
[[nodiscard]] inline DispersionCurve sweep(ModelKind model, const ElasticParams& e,
                                           const InertiaParams& in, WaveBlock block,
                                           const KGrid& grid, const SweepOptions& opt = {})
{
    require_valid(e, in);
    if (grid.size() < kMinGridPoints) throw DegenerateGrid("sweep: grid has too few points");

    const BlockSystem bs = assemble_block(model, e, in, block);
    const std::size_t n = grid.size();

    std::vector<EigenSolution> sols;
    std::vector<BlockMatrix> masses;
    sols.reserve(n);
    masses.reserve(n);
    for (double k : grid.values()) { // independent per k
        masses.push_back(bs.mass(k));
        sols.push_back(detail::solve_block(bs, k));
    }

    // perm[j][b]: eigen-index at grid point j followed by branch b
    std::vector<std::array<int, 3>> perm(n);
    perm[0] = {0, 1, 2};
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const BlockMatrix Mbar = 0.5 * (masses[j] + masses[j + 1]);
        std::array<std::array<double, 3>, 3> overlap{};
        for (int b = 0; b < 3; ++b) {
            const BlockVector v = sols[j].vectors.col(perm[j][static_cast<std::size_t>(b)]);
            for (int c = 0; c < 3; ++c) {
                const BlockVector w = sols[j + 1].vectors.col(c);
                overlap[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] =
                    std::abs(v.dot(Mbar * w));
            }
        }
        std::array<bool, 3> used_b{};
        std::array<bool, 3> used_c{};
        for (int round = 0; round < 3; ++round) {
            double best = -1.0;
            int bb = 0;
            int bc = 0;
            // c runs over ascending omega, so ties keep the lower eigenvalue
            for (int b = 0; b < 3; ++b) {
                if (used_b[static_cast<std::size_t>(b)]) continue;
                for (int c = 0; c < 3; ++c) {
                    if (used_c[static_cast<std::size_t>(c)]) continue;
                    const double o = overlap[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
                    if (o > best) {
                        best = o;
                        bb = b;
                        bc = c;
                    }
                }
            }
            used_b[static_cast<std::size_t>(bb)] = true;
            used_c[static_cast<std::size_t>(bc)] = true;
            perm[j + 1][static_cast<std::size_t>(bb)] = bc;
        }
    }

    DispersionCurve curve;
    curve.model = model;
    curve.elastic = e;
    curve.inertia = in;
    curve.block = block;
    curve.grid = grid;

    const auto names = detail::k0_labels(block, sols[0]);
    for (std::size_t b = 0; b < 3; ++b) {
        Branch& br = curve.branches[b];
        br.label = names[b];
        br.omegas.reserve(n);
        br.vectors.reserve(n);
        br.modes.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            const int idx = perm[j][b];
            br.omegas.push_back(std::sqrt(sols[j].omega_sq[static_cast<std::size_t>(idx)]));
            const BlockVector v = sols[j].vectors.col(idx);
            br.vectors.push_back(v);
            br.modes.push_back(
                classify_mode(detail::energy_weighted(v, masses[j]), block, opt.mixed_threshold));
        }
    }

    for (const Branch& br : curve.branches) {
        if (!detail::is_acoustic_label(br.label)) curve.cutoffs.push_back(br.omegas.front());
    }
    std::sort(curve.cutoffs.begin(), curve.cutoffs.end());

    for (std::size_t b = 0; b < 3; ++b) {
        curve.asymptote_flags[b] = detect_asymptote(curve.branches[b], grid);
    }
    return curve;
}

struct CutoffEntry {
    std::string label;
    double omega = 0.0; // [rad/s]
    bool acoustic = false;
};

struct BlockCutoffs {
    WaveBlock block{};
    std::vector<CutoffEntry> entries; // ascending omega
};

/// omega(0) of every branch of every block.
[[nodiscard]] inline std::array<BlockCutoffs, 4> cutoffs(ModelKind model, const ElasticParams& e,
                                                         const InertiaParams& in)
{
    require_valid(e, in);
    const auto blocks = block_decompose(assemble_full(model, e, in));
    std::array<BlockCutoffs, 4> out;
    for (WaveBlock b : kAllBlocks) {
        const BlockSystem& bs = blocks[block_index(b)];
        const EigenSolution sol = detail::solve_block(bs, 0.0);
        const auto names = detail::k0_labels(b, sol);
        BlockCutoffs& bc = out[block_index(b)];
        bc.block = b;
        for (std::size_t j = 0; j < 3; ++j) {
            bc.entries.push_back({names[j], std::sqrt(sol.omega_sq[j]), detail::is_acoustic_label(names[j])});
        }
    }
    return out;
}

/// Largest cutoff over all blocks.
[[nodiscard]] inline double largest_cutoff(const std::array<BlockCutoffs, 4>& all)
{
    double w = 0.0;
    for (const auto& bc : all)
        for (const auto& c : bc.entries) w = std::max(w, c.omega);
    return w;
}

} // namespace micromorph
