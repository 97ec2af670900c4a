#pragma once

// Flat `key = value` run configuration. Moduli are given in MPa, L_c in mm,
// densities in kg/m^3 and kg/m, wavenumbers in rad/m and frequencies in rad/s;
// everything is converted to SI on ingestion.

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "micromorph/bandgap.hpp"
#include "micromorph/core.hpp"
#include "micromorph/dispersion.hpp"
#include "micromorph/errors.hpp"

namespace micromorph::io {

struct RunConfig {
    ModelKind model = ModelKind::RelaxedCurl;
    ElasticParams elastic = reference_elastic();
    InertiaParams inertia = reference_inertia(0.1);
    std::size_t points = kDefaultGridPoints;
    double k_max = 0.0;         // 0: 100 / L_c
    double omega_ceiling = 0.0; // 0: derived from cutoffs
    double delta_omega = 0.0;
    double min_gap_width = 0.0;
    double mixed_threshold = kDefaultMixedThreshold;
    GapScope scope = GapScope::Coupled;
    std::string output; // empty: standard output
    bool hertz = false;

    [[nodiscard]] GapOptions gap_options() const
    {
        GapOptions g;
        g.points = points;
        g.k_max = k_max;
        g.omega_ceiling = omega_ceiling;
        g.delta_omega = delta_omega;
        g.min_gap_width = min_gap_width;
        g.sweep.mixed_threshold = mixed_threshold;
        return g;
    }

    /// Throws DegenerateGrid for grids that violate the KGrid invariants.
    [[nodiscard]] KGrid grid() const
    {
        return KGrid::linear(points, k_max > 0.0 ? k_max : KGrid::default_for(elastic).k_max());
    }
};

/// Keys accepted in config files and as `--key value` flags.
inline constexpr std::array<std::string_view, 21> kConfigKeys{
    "model", "mu_e", "lambda_e", "mu_c", "mu_micro", "lambda_micro", "L_c",
    "rho", "eta", "eta_bar_1", "eta_bar_2", "eta_bar_3", "points", "k_max",
    "omega_ceiling", "delta_omega", "min_gap_width", "mixed_threshold", "scope",
    "output", "hertz"};

/// Keys holding a single real number, usable by `sweep-param`.
[[nodiscard]] inline bool is_scalar_key(std::string_view key)
{
    for (std::string_view k : {"mu_e", "lambda_e", "mu_c", "mu_micro", "lambda_micro", "L_c", "rho",
                               "eta", "eta_bar_1", "eta_bar_2", "eta_bar_3"}) {
        if (k == key) return true;
    }
    return false;
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view key, std::string_view text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ConfigError("config: '" + std::string(key) + "' expects a number, got '" +
                          std::string(text) + "'");
    }
    return v;
}

inline std::size_t parse_count(std::string_view key, std::string_view text)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("config: '" + std::string(key) + "' expects a non-negative integer, got '" +
                          std::string(text) + "'");
    }
    return v;
}

inline bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("config: '" + std::string(key) + "' expects true/false, got '" +
                      std::string(text) + "'");
}

} // namespace detail

/// Applies one setting; throws ConfigError for unknown keys or malformed values.
inline void apply(RunConfig& cfg, std::string_view key, std::string_view raw)
{
    using detail::parse_real;
    using namespace units;
    const std::string_view value = detail::trim(raw);

    if (key == "model") {
        const auto m = parse_model(value);
        if (!m) throw ConfigError("config: unknown model '" + std::string(value) + "'");
        cfg.model = *m;
    } else if (key == "mu_e") cfg.elastic.mu_e = parse_real(key, value) * MPa;
    else if (key == "lambda_e") cfg.elastic.lambda_e = parse_real(key, value) * MPa;
    else if (key == "mu_c") cfg.elastic.mu_c = parse_real(key, value) * MPa;
    else if (key == "mu_micro") cfg.elastic.mu_micro = parse_real(key, value) * MPa;
    else if (key == "lambda_micro") cfg.elastic.lambda_micro = parse_real(key, value) * MPa;
    else if (key == "L_c") cfg.elastic.L_c = parse_real(key, value) * mm;
    else if (key == "rho") cfg.inertia.rho = parse_real(key, value);
    else if (key == "eta") cfg.inertia.eta = parse_real(key, value);
    else if (key == "eta_bar_1") cfg.inertia.eta_bar_1 = parse_real(key, value);
    else if (key == "eta_bar_2") cfg.inertia.eta_bar_2 = parse_real(key, value);
    else if (key == "eta_bar_3") cfg.inertia.eta_bar_3 = parse_real(key, value);
    else if (key == "points") cfg.points = detail::parse_count(key, value);
    else if (key == "k_max") cfg.k_max = parse_real(key, value);
    else if (key == "omega_ceiling") cfg.omega_ceiling = parse_real(key, value);
    else if (key == "delta_omega") cfg.delta_omega = parse_real(key, value);
    else if (key == "min_gap_width") cfg.min_gap_width = parse_real(key, value);
    else if (key == "mixed_threshold") cfg.mixed_threshold = parse_real(key, value);
    else if (key == "scope") {
        const auto s = parse_scope(value);
        if (!s) throw ConfigError("config: unknown scope '" + std::string(value) + "'");
        cfg.scope = *s;
    } else if (key == "output") cfg.output = std::string(value);
    else if (key == "hertz") cfg.hertz = detail::parse_bool(key, value);
    else throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
inline void apply_text(RunConfig& cfg, std::string_view text, std::string_view source = "config")
{
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string_view key = detail::trim(line.substr(0, eq));
        try {
            apply(cfg, key, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

inline void apply_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_text(cfg, ss.str(), path);
}

/// Grid invariant checks that do not need the numerics.
inline void check_grid(const RunConfig& cfg)
{
    if (cfg.points < kMinGridPoints) {
        throw ConfigError("config: points = " + std::to_string(cfg.points) +
                          " violates KGrid invariant 'at least " + std::to_string(kMinGridPoints) +
                          " points'");
    }
    if (cfg.k_max < 0.0) throw ConfigError("config: k_max must be positive");
}

} // namespace micromorph::io
