#pragma once

// Command-line front end. Exit codes: 0 success, 2 configuration or parse
// error, 3 parameter validation failure, 4 numerical failure.

#include <array>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "micromorph/bandgap.hpp"
#include "micromorph/core.hpp"
#include "micromorph/dispersion.hpp"
#include "micromorph/io/config.hpp"
#include "micromorph/io/format.hpp"
#include "micromorph/io/svg.hpp"

namespace micromorph::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kValidationError = 3, kNumericalError = 4 };

namespace detail {

using nlohmann::ordered_json;
using io::format_number;

struct CommonArgs {
    std::string config;
    std::map<std::string, std::string, std::less<>> values;
    std::map<std::string, CLI::Option*, std::less<>> options;
    CLI::Option* hertz = nullptr;
};

inline void add_common(CLI::App& sub, CommonArgs& args)
{
    sub.add_option("--config", args.config, "key = value configuration file");
    for (std::string_view key : io::kConfigKeys) {
        if (key == "hertz") continue;
        std::string name(key);
        args.options[name] = sub.add_option("--" + name, args.values[name], "override '" + name + "'");
    }
    args.hertz = sub.add_flag("--hertz", "emit frequencies in Hz instead of rad/s");
}

inline io::RunConfig build_config(const CommonArgs& args)
{
    io::RunConfig cfg;
    if (!args.config.empty()) io::apply_file(cfg, args.config);
    for (const auto& [key, opt] : args.options) {
        if (opt->count() > 0) io::apply(cfg, key, args.values.at(key));
    }
    if (args.hertz->count() > 0) cfg.hertz = true;
    return cfg;
}

inline bool check_parameters(const io::RunConfig& cfg, std::ostream& err)
{
    const auto report = validate(cfg.elastic, cfg.inertia);
    if (report.ok()) return true;
    for (const auto* f : report.failures()) err << "validation: " << f->message << '\n';
    return false;
}

inline ordered_json parameters_json(const ElasticParams& e, const InertiaParams& in)
{
    using namespace units;
    ordered_json j;
    j["mu_e"] = e.mu_e / MPa;
    j["lambda_e"] = e.lambda_e / MPa;
    j["mu_c"] = e.mu_c / MPa;
    j["mu_micro"] = e.mu_micro / MPa;
    j["lambda_micro"] = e.lambda_micro / MPa;
    j["L_c"] = e.L_c / mm;
    j["rho"] = in.rho;
    j["eta"] = in.eta;
    j["eta_bar_1"] = in.eta_bar_1;
    j["eta_bar_2"] = in.eta_bar_2;
    j["eta_bar_3"] = in.eta_bar_3;
    return j;
}

inline std::string frequency_unit(bool hertz) { return hertz ? "Hz" : "rad/s"; }

inline ordered_json gap_report_json(const GapReport& r, bool hertz)
{
    ordered_json j;
    j["model"] = std::string(to_string(r.model));
    j["scope"] = std::string(to_string(r.scope));
    j["units"] = frequency_unit(hertz);
    j["n_gaps"] = r.count();
    ordered_json gaps = ordered_json::array();
    for (const Gap& g : r.gaps) {
        gaps.push_back({{"omega_lo", io::emit_frequency(g.omega_lo, hertz)},
                        {"omega_hi", io::emit_frequency(g.omega_hi, hertz)}});
    }
    j["gaps"] = gaps;
    j["omega_ceiling"] = io::emit_frequency(r.omega_ceiling, hertz);
    j["delta_omega"] = io::emit_frequency(r.delta_omega, hertz);
    j["min_gap_width"] = io::emit_frequency(r.min_gap_width, hertz);
    j["grid"] = {{"points", r.points}, {"k_max", r.k_max}};
    j["parameters"] = parameters_json(r.elastic, r.inertia);
    return j;
}

// The three physically distinct blocks; plots put the uncoupled panel first.
inline constexpr std::array<WaveBlock, 3> kDisplayBlocks{WaveBlock::Longitudinal, WaveBlock::Transverse2,
                                                         WaveBlock::Uncoupled};
inline constexpr std::array<WaveBlock, 3> kPlotBlocks{WaveBlock::Uncoupled, WaveBlock::Longitudinal,
                                                      WaveBlock::Transverse2};

inline WaveBlock block_of_label(std::string_view label, bool& ok)
{
    ok = true;
    if (label == "LA" || label == "LO1" || label == "LO2") return WaveBlock::Longitudinal;
    if (label == "TA" || label == "TO1" || label == "TO2") return WaveBlock::Transverse2;
    if (label == "TRO" || label == "TSO" || label == "TCVO") return WaveBlock::Uncoupled;
    ok = false;
    return WaveBlock::Longitudinal;
}

// Writes to cfg.output when set, otherwise to `out`.
inline void emit(const io::RunConfig& cfg, std::ostream& out,
                 const std::function<void(std::ostream&)>& body)
{
    if (cfg.output.empty()) {
        body(out);
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + cfg.output + "'");
    body(f);
    if (!f) throw ConfigError("failed writing '" + cfg.output + "'");
}

inline void write_curves_csv(std::ostream& os, std::span<const DispersionCurve> curves, bool hertz)
{
    os << "k,block,branch_label,omega,dominant_mode,ratio\n";
    for (const auto& c : curves) {
        for (const Branch& br : c.branches) {
            for (std::size_t j = 0; j < c.grid.size(); ++j) {
                os << format_number(c.grid[j]) << ',' << to_string(c.block) << ',' << br.label << ','
                   << format_number(io::emit_frequency(br.omegas[j], hertz)) << ','
                   << io::csv_field(br.modes[j].dominant) << ',' << format_number(br.modes[j].ratio)
                   << '\n';
            }
        }
    }
}

} // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    using namespace detail;

    CLI::App app{"Dispersion curves, cut-offs and band-gaps of isotropic micromorphic media",
                 "micromorph"};
    app.require_subcommand(1);

    std::array<CommonArgs, 7> common; // one per subcommand; CLI11 options belong to a single app
    std::string block_name;
    std::string branch_label;
    std::string param_name;
    double param_from = 0.0;
    double param_to = 0.0;
    std::size_t param_steps = 11;
    double panel_width = 320.0;
    double panel_height = 260.0;

    auto* c_cutoffs = app.add_subcommand("cutoffs", "JSON of omega(0) per block");
    auto* c_disperse = app.add_subcommand("disperse", "CSV of dispersion branches");
    auto* c_gaps = app.add_subcommand("gaps", "JSON band-gap report");
    auto* c_modes = app.add_subcommand("modes", "CSV of mode markers along one branch");
    auto* c_homog = app.add_subcommand("homogenize", "JSON of homogenized macro parameters");
    auto* c_sweep = app.add_subcommand("sweep-param", "gap counts over a scalar parameter range");
    auto* c_plot = app.add_subcommand("plot", "SVG dispersion diagram (uncoupled, longitudinal, transverse)");
    const std::array<CLI::App*, 7> subs{c_cutoffs, c_disperse, c_gaps, c_modes, c_homog, c_sweep, c_plot};
    for (std::size_t i = 0; i < subs.size(); ++i) add_common(*subs[i], common[i]);
    c_disperse->add_option("--block", block_name, "longitudinal | transverse | transverse-3 | uncoupled");
    c_modes->add_option("--branch", branch_label, "branch label, e.g. LA, TO1, TRO")->required();
    c_sweep->add_option("--param", param_name, "scalar config key to vary")->required();
    c_sweep->add_option("--from", param_from, "first value (config units)")->required();
    c_sweep->add_option("--to", param_to, "last value (config units)")->required();
    c_sweep->add_option("--steps", param_steps, "number of values, >= 2");
    c_plot->add_option("--panel-width", panel_width, "panel width [px]");
    c_plot->add_option("--panel-height", panel_height, "panel height [px]");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        std::size_t active = 0;
        while (active < subs.size() && !subs[active]->parsed()) ++active;
        if (active == subs.size()) return kConfigError;
        io::RunConfig cfg = build_config(common[active]);

        if (c_homog->parsed()) {
            if (!check_parameters(cfg, err)) return kValidationError;
            const MacroParams m = homogenize(cfg.elastic);
            ordered_json j;
            j["units"] = "MPa";
            j["mu_macro"] = m.mu_macro / units::MPa;
            j["lambda_macro"] = m.lambda_macro / units::MPa;
            j["E_macro"] = m.E_macro / units::MPa;
            j["nu_macro"] = m.nu_macro;
            emit(cfg, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
            return kOk;
        }

        io::check_grid(cfg);
        if (!check_parameters(cfg, err)) return kValidationError;

        if (c_cutoffs->parsed()) {
            const auto all = cutoffs(cfg.model, cfg.elastic, cfg.inertia);
            ordered_json j;
            j["model"] = std::string(to_string(cfg.model));
            j["units"] = frequency_unit(cfg.hertz);
            ordered_json blocks = ordered_json::array();
            for (const auto& bc : all) {
                ordered_json entries = ordered_json::array();
                for (const auto& c : bc.entries) {
                    entries.push_back({{"label", c.label},
                                       {"omega", io::emit_frequency(c.omega, cfg.hertz)},
                                       {"acoustic", c.acoustic}});
                }
                blocks.push_back({{"block", std::string(to_string(bc.block))}, {"cutoffs", entries}});
            }
            j["blocks"] = blocks;
            emit(cfg, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
            return kOk;
        }

        const SweepOptions sweep_opt{cfg.mixed_threshold};

        if (c_disperse->parsed()) {
            std::vector<WaveBlock> blocks(kDisplayBlocks.begin(), kDisplayBlocks.end());
            if (!block_name.empty()) {
                const auto b = parse_block(block_name);
                if (!b) throw ConfigError("unknown block '" + block_name + "'");
                blocks = {*b};
            }
            const KGrid grid = cfg.grid();
            std::vector<DispersionCurve> curves;
            for (WaveBlock b : blocks) curves.push_back(sweep(cfg.model, cfg.elastic, cfg.inertia, b, grid, sweep_opt));
            emit(cfg, out, [&](std::ostream& os) { write_curves_csv(os, curves, cfg.hertz); });
            return kOk;
        }

        if (c_gaps->parsed()) {
            const GapReport r = detect_gaps(cfg.model, cfg.elastic, cfg.inertia, cfg.scope, cfg.gap_options());
            emit(cfg, out, [&](std::ostream& os) { os << gap_report_json(r, cfg.hertz).dump(2) << '\n'; });
            return kOk;
        }

        if (c_modes->parsed()) {
            bool ok = false;
            const WaveBlock b = block_of_label(branch_label, ok);
            if (!ok) throw ConfigError("unknown branch label '" + branch_label + "'");
            const KGrid grid = cfg.grid();
            const DispersionCurve c = sweep(cfg.model, cfg.elastic, cfg.inertia, b, grid, sweep_opt);
            const Branch* br = c.find(branch_label);
            if (br == nullptr) throw ConfigError("branch '" + branch_label + "' not present in this model");
            emit(cfg, out, [&](std::ostream& os) {
                os << "k,omega,dominant_mode,ratio\n";
                for (std::size_t j = 0; j < grid.size(); ++j) {
                    os << format_number(grid[j]) << ','
                       << format_number(io::emit_frequency(br->omegas[j], cfg.hertz)) << ','
                       << io::csv_field(br->modes[j].dominant) << ',' << format_number(br->modes[j].ratio)
                       << '\n';
                }
            });
            return kOk;
        }

        if (c_sweep->parsed()) {
            if (!io::is_scalar_key(param_name)) {
                throw ConfigError("sweep-param: '" + param_name + "' is not a scalar parameter");
            }
            if (param_steps < 2) throw ConfigError("sweep-param: --steps must be >= 2");
            std::ostringstream body;
            body << "param_value,n_gaps,gap_intervals\n";
            for (std::size_t i = 0; i < param_steps; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(param_steps - 1);
                const double v = param_from + t * (param_to - param_from);
                io::RunConfig point = cfg;
                io::apply(point, param_name, format_number(v));
                if (!check_parameters(point, err)) return kValidationError;
                const GapReport r = detect_gaps(point.model, point.elastic, point.inertia, point.scope,
                                                point.gap_options());
                std::string intervals;
                for (const Gap& g : r.gaps) {
                    if (!intervals.empty()) intervals += ';';
                    intervals += format_number(io::emit_frequency(g.omega_lo, cfg.hertz)) + ':' +
                                 format_number(io::emit_frequency(g.omega_hi, cfg.hertz));
                }
                body << format_number(v) << ',' << r.count() << ',' << io::csv_field(intervals) << '\n';
            }
            emit(cfg, out, [&](std::ostream& os) { os << body.str(); });
            return kOk;
        }

        if (c_plot->parsed()) {
            const KGrid grid = cfg.grid();
            std::vector<DispersionCurve> curves;
            for (WaveBlock b : kPlotBlocks) curves.push_back(sweep(cfg.model, cfg.elastic, cfg.inertia, b, grid, sweep_opt));
            io::SvgOptions so;
            so.panel_width = panel_width;
            so.panel_height = panel_height;
            so.hertz = cfg.hertz;
            so.omega_ceiling = cfg.omega_ceiling > 0.0
                                   ? cfg.omega_ceiling
                                   : 1.5 * largest_cutoff(cutoffs(cfg.model, cfg.elastic, cfg.inertia));
            emit(cfg, out, [&](std::ostream& os) { io::write_svg(os, curves, so); });
            return kOk;
        }
    } catch (const ValidationFailure& e) {
        err << "validation: " << e.what() << '\n';
        return kValidationError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
    return kConfigError;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace micromorph::cli
