#pragma once

// Parameter sets, model/block enumerations, validation and the micro-to-macro
// homogenization of the isotropic micromorphic models.
//
// Everything in this header is in SI units (Pa, m, kg, s, rad/s). Table-style
// engineering units (MPa, mm) are converted at the boundary through
// micromorph::units.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "micromorph/errors.hpp"

namespace micromorph {

namespace units {
inline constexpr double MPa = 1.0e6;
inline constexpr double mm = 1.0e-3;
} // namespace units

struct ElasticParams {
    double mu_e = 0.0;         // [Pa]
    double lambda_e = 0.0;     // [Pa]
    double mu_c = 0.0;         // Cosserat coupling modulus [Pa]
    double mu_micro = 0.0;     // [Pa]
    double lambda_micro = 0.0; // [Pa]
    double L_c = 0.0;          // characteristic length [m]

    /// Same parameters with the five moduli multiplied by `c` (L_c untouched).
    [[nodiscard]] ElasticParams scaled_moduli(double c) const
    {
        return {c * mu_e, c * lambda_e, c * mu_c, c * mu_micro, c * lambda_micro, L_c};
    }

    friend bool operator==(const ElasticParams&, const ElasticParams&) = default;
};

struct InertiaParams {
    double rho = 0.0;       // [kg/m^3]
    double eta = 0.0;       // free micro-inertia [kg/m]
    double eta_bar_1 = 0.0; // gradient micro-inertia, deviatoric-symmetric part [kg/m]
    double eta_bar_2 = 0.0; // skew part [kg/m]
    double eta_bar_3 = 0.0; // spherical part [kg/m]

    [[nodiscard]] bool has_gradient_inertia() const
    {
        return eta_bar_1 != 0.0 || eta_bar_2 != 0.0 || eta_bar_3 != 0.0;
    }

    friend bool operator==(const InertiaParams&, const InertiaParams&) = default;
};

enum class ModelKind {
    RelaxedCurl,    // curvature ||Curl P||^2
    RelaxedDivCurl, // curvature ||Div P||^2 + ||Curl P||^2
    RelaxedDiv,     // curvature ||Div P||^2
    MindlinEringen, // curvature ||Grad P||^2
    InternalVariable // no curvature; L_c is ignored
};

inline constexpr std::array<ModelKind, 5> kAllModels{
    ModelKind::RelaxedCurl, ModelKind::RelaxedDivCurl, ModelKind::RelaxedDiv,
    ModelKind::MindlinEringen, ModelKind::InternalVariable};

[[nodiscard]] inline std::string_view to_string(ModelKind m)
{
    switch (m) {
    case ModelKind::RelaxedCurl: return "relaxed-curl";
    case ModelKind::RelaxedDivCurl: return "relaxed-div-curl";
    case ModelKind::RelaxedDiv: return "relaxed-div";
    case ModelKind::MindlinEringen: return "mindlin-eringen";
    case ModelKind::InternalVariable: return "internal-variable";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<ModelKind> parse_model(std::string_view name)
{
    for (ModelKind m : kAllModels) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

/// The four invariant 3-DOF subspaces of plane waves travelling along x1.
/// Transverse2 and Transverse3 are the two (isotropy-equivalent) polarizations.
enum class WaveBlock { Longitudinal, Transverse2, Transverse3, Uncoupled };

inline constexpr std::array<WaveBlock, 4> kAllBlocks{
    WaveBlock::Longitudinal, WaveBlock::Transverse2, WaveBlock::Transverse3,
    WaveBlock::Uncoupled};

[[nodiscard]] inline constexpr std::size_t block_index(WaveBlock b)
{
    return static_cast<std::size_t>(b);
}

[[nodiscard]] inline std::string_view to_string(WaveBlock b)
{
    switch (b) {
    case WaveBlock::Longitudinal: return "longitudinal";
    case WaveBlock::Transverse2: return "transverse";
    case WaveBlock::Transverse3: return "transverse-3";
    case WaveBlock::Uncoupled: return "uncoupled";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<WaveBlock> parse_block(std::string_view name)
{
    if (name == "transverse-2") return WaveBlock::Transverse2;
    for (WaveBlock b : kAllBlocks) {
        if (to_string(b) == name) return b;
    }
    return std::nullopt;
}

struct MacroParams {
    double lambda_macro = 0.0; // [Pa]
    double mu_macro = 0.0;     // [Pa]
    double E_macro = 0.0;      // [Pa]
    double nu_macro = 0.0;     // [-]
};

struct ValidationItem {
    std::string condition; // e.g. "mu_e > 0"
    bool passed = true;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationItem> items;

    [[nodiscard]] bool ok() const
    {
        for (const auto& it : items) {
            if (!it.passed) return false;
        }
        return true;
    }

    [[nodiscard]] std::vector<const ValidationItem*> failures() const
    {
        std::vector<const ValidationItem*> out;
        for (const auto& it : items) {
            if (!it.passed) out.push_back(&it);
        }
        return out;
    }

    [[nodiscard]] bool failed(std::string_view condition) const
    {
        for (const auto& it : items) {
            if (!it.passed && it.condition == condition) return true;
        }
        return false;
    }

    [[nodiscard]] std::string summary() const
    {
        std::string s;
        for (const auto* f : failures()) {
            if (!s.empty()) s += "; ";
            s += f->message;
        }
        return s;
    }
};

/// Checks every parameter invariant and reports all of them; never throws.
[[nodiscard]] inline ValidationReport validate(const ElasticParams& e, const InertiaParams& in)
{
    ValidationReport r;
    auto check = [&r](std::string cond, bool ok, const std::string& detail) {
        r.items.push_back({cond, ok, ok ? std::string{} : "violated " + cond + " (" + detail + ")"});
    };
    auto num = [](double v) { return std::to_string(v); };

    check("mu_e > 0", e.mu_e > 0.0, "mu_e = " + num(e.mu_e));
    check("mu_micro > 0", e.mu_micro > 0.0, "mu_micro = " + num(e.mu_micro));
    check("mu_c >= 0", e.mu_c >= 0.0, "mu_c = " + num(e.mu_c));
    check("L_c >= 0", e.L_c >= 0.0, "L_c = " + num(e.L_c));
    check("3*lambda_e + 2*mu_e > 0", 3.0 * e.lambda_e + 2.0 * e.mu_e > 0.0,
          "value = " + num(3.0 * e.lambda_e + 2.0 * e.mu_e));
    check("3*lambda_micro + 2*mu_micro > 0", 3.0 * e.lambda_micro + 2.0 * e.mu_micro > 0.0,
          "value = " + num(3.0 * e.lambda_micro + 2.0 * e.mu_micro));
    check("rho > 0", in.rho > 0.0, "rho = " + num(in.rho));
    check("eta > 0", in.eta > 0.0, "eta = " + num(in.eta));
    const bool bars_ok = in.eta_bar_1 >= 0.0 && in.eta_bar_2 >= 0.0 && in.eta_bar_3 >= 0.0;
    check("eta_bar_i >= 0", bars_ok,
          "eta_bar = (" + num(in.eta_bar_1) + ", " + num(in.eta_bar_2) + ", " + num(in.eta_bar_3) + ")");
    return r;
}

/// Throws ValidationFailure listing every violated invariant.
inline void require_valid(const ElasticParams& e, const InertiaParams& in)
{
    const auto report = validate(e, in);
    if (!report.ok()) throw ValidationFailure(report.summary());
}

/// Effective Cauchy moduli seen at long wavelengths. Both the shear and the
/// bulk-type combination are harmonic means of the coupling and micro values:
///   mu_macro              = mu_e mu_micro / (mu_e + mu_micro)
///   2 mu_macro + 3 l_macro = harmonic mean of (2 mu_e + 3 l_e), (2 mu_micro + 3 l_micro)
[[nodiscard]] inline MacroParams homogenize(const ElasticParams& e)
{
    const double shear_den = e.mu_e + e.mu_micro;
    const double bulk_e = 2.0 * e.mu_e + 3.0 * e.lambda_e;
    const double bulk_micro = 2.0 * e.mu_micro + 3.0 * e.lambda_micro;
    const double bulk_den = bulk_e + bulk_micro;
    if (shear_den == 0.0 || bulk_den == 0.0) {
        throw InputError("homogenize: vanishing harmonic-mean denominator");
    }

    MacroParams m;
    m.mu_macro = e.mu_e * e.mu_micro / shear_den;
    const double bulk_macro = bulk_e * bulk_micro / bulk_den;
    m.lambda_macro = (bulk_macro - 2.0 * m.mu_macro) / 3.0;
    m.E_macro = m.mu_macro * (3.0 * m.lambda_macro + 2.0 * m.mu_macro) / (m.lambda_macro + m.mu_macro);
    m.nu_macro = m.lambda_macro / (2.0 * (m.lambda_macro + m.mu_macro));
    return m;
}

// Reference parameter set.

[[nodiscard]] inline ElasticParams reference_elastic()
{
    using namespace units;
    return {200.0 * MPa, 400.0 * MPa, 1000.0 * MPa, 100.0 * MPa, 100.0 * MPa, 1.0 * mm};
}

/// `eta_bar` is applied to all three gradient micro-inertiae (typically 0 or 0.1 kg/m).
[[nodiscard]] inline InertiaParams reference_inertia(double eta_bar = 0.1)
{
    return {2000.0, 1.0e-2, eta_bar, eta_bar, eta_bar};
}

} // namespace micromorph
