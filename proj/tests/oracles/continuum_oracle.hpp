#pragma once

// Test-only evaluation of the plane-wave equations written directly with
// tensors (stresses, curvature forces, gradient-inertia flux), independent of
// the operator-based assembly.
//
// Amplitudes u, P of exp(i(k x1 - w t)); grad u = i k u (x) e1.
// Strong form:   rho u_tt - Div I = Div sigma,   eta P_tt = sigma - s - C(P)
// The plane-wave pencil reads  w^2 (M w) = K w  with
//   (K w)_u = -Div sigma  = -i k sigma_{i1}
//   (K w)_P = -sigma + s + C(P)
//   (M w)_u = rho u - i k F_{i1},  F = eb1 dev sym G + eb2 skew G + eb3/3 tr(G) 1,  G = grad u
//   (M w)_P = eta P

#include <array>
#include <complex>

#include "micromorph/core.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Tensor = std::array<std::array<cplx, 3>, 3>;
using Amplitudes = std::array<cplx, 12>;

inline constexpr cplx I{0.0, 1.0};

inline Tensor zero() { return {}; }

inline Tensor identity()
{
    Tensor t{};
    for (int i = 0; i < 3; ++i) t[i][i] = 1.0;
    return t;
}

inline Tensor add(const Tensor& a, const Tensor& b, cplx sb = 1.0)
{
    Tensor t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = a[i][j] + sb * b[i][j];
    return t;
}

inline Tensor scale(cplx s, const Tensor& a) { return add(zero(), a, s); }

inline Tensor transpose(const Tensor& a)
{
    Tensor t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
    return t;
}

inline Tensor sym(const Tensor& a) { return scale(0.5, add(a, transpose(a))); }
inline Tensor skew(const Tensor& a) { return scale(0.5, add(a, transpose(a), -1.0)); }
inline cplx tr(const Tensor& a) { return a[0][0] + a[1][1] + a[2][2]; }
inline Tensor dev(const Tensor& a) { return add(a, identity(), -tr(a) / 3.0); }

inline double norm2(const Tensor& a)
{
    double s = 0.0;
    for (const auto& r : a)
        for (cplx v : r) s += std::norm(v);
    return s;
}

inline int eps(int a, int b, int c)
{
    if (a == b || b == c || a == c) return 0;
    return ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0)) ? 1 : -1;
}

// Differentiation is  d/dx1 -> i k, d/dx2 = d/dx3 -> 0.
inline cplx d(int axis, double k, cplx v) { return axis == 0 ? I * k * v : cplx{}; }

inline Tensor curl(const Tensor& p, double k)
{
    Tensor t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int kk = 0; kk < 3; ++kk)
                for (int h = 0; h < 3; ++h)
                    if (eps(j, kk, h) != 0) t[i][j] += static_cast<double>(eps(j, kk, h)) * d(kk, k, p[i][h]);
    return t;
}

inline std::array<cplx, 3> div(const Tensor& p, double k)
{
    std::array<cplx, 3> v{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[i] += d(j, k, p[i][j]);
    return v;
}

inline Tensor grad_of_vector(const std::array<cplx, 3>& v, double k)
{
    Tensor t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = d(j, k, v[i]);
    return t;
}

// Laplacian of a plane-wave tensor field
inline Tensor laplacian(const Tensor& p, double k) { return scale(-k * k, p); }

inline std::array<cplx, 3> displacement(const Amplitudes& w) { return {w[0], w[1], w[2]}; }

inline Tensor micro(const Amplitudes& w)
{
    Tensor p{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p[i][j] = w[3 + 3 * i + j];
    return p;
}

inline Tensor stress(const micromorph::ElasticParams& e, const Tensor& G, const Tensor& P)
{
    const Tensor E = add(G, P, -1.0);
    return add(add(scale(2.0 * e.mu_e, sym(E)), identity(), e.lambda_e * tr(E)), skew(E), 2.0 * e.mu_c);
}

inline Tensor micro_stress(const micromorph::ElasticParams& e, const Tensor& P)
{
    return add(scale(2.0 * e.mu_micro, sym(P)), identity(), e.lambda_micro * tr(P));
}

/// Curvature force appearing with a minus sign in the micro equation.
inline Tensor curvature_force(micromorph::ModelKind model, const micromorph::ElasticParams& e,
                              const Tensor& P, double k)
{
    using micromorph::ModelKind;
    const double c = e.mu_e * e.L_c * e.L_c;
    switch (model) {
    case ModelKind::RelaxedCurl: // Curl m, m = c Curl P
        return curl(scale(c, curl(P, k)), k);
    case ModelKind::RelaxedDivCurl: // -c (grad Div P - Curl Curl P)
        return scale(-c, add(grad_of_vector(div(P, k), k), curl(curl(P, k), k), -1.0));
    case ModelKind::RelaxedDiv: // -c grad Div P
        return scale(-c, grad_of_vector(div(P, k), k));
    case ModelKind::MindlinEringen: // -c Delta P
        return scale(-c, laplacian(P, k));
    case ModelKind::InternalVariable:
        return zero();
    }
    return zero();
}

inline Amplitudes stiffness_action(micromorph::ModelKind model, const micromorph::ElasticParams& e,
                                   double k, const Amplitudes& w)
{
    const Tensor G = grad_of_vector(displacement(w), k);
    const Tensor P = micro(w);
    const Tensor sigma = stress(e, G, P);
    const Tensor rhs = add(add(micro_stress(e, P), sigma, -1.0), curvature_force(model, e, P, k));
    Amplitudes out{};
    for (int i = 0; i < 3; ++i) out[i] = -I * k * sigma[i][0];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[3 + 3 * i + j] = rhs[i][j];
    return out;
}

inline Amplitudes mass_action(const micromorph::InertiaParams& in, double k, const Amplitudes& w)
{
    const Tensor G = grad_of_vector(displacement(w), k);
    const Tensor flux = add(add(scale(in.eta_bar_1, dev(sym(G))), skew(G), in.eta_bar_2), identity(),
                            in.eta_bar_3 / 3.0 * tr(G));
    Amplitudes out{};
    for (int i = 0; i < 3; ++i) out[i] = in.rho * w[i] - I * k * flux[i][0];
    for (int i = 3; i < 12; ++i) out[i] = in.eta * w[i];
    return out;
}

/// Strain energy density of the complex amplitudes (quadratic form, no 1/2 averaging).
inline double strain_energy(micromorph::ModelKind model, const micromorph::ElasticParams& e, double k,
                            const Amplitudes& w)
{
    using micromorph::ModelKind;
    const Tensor G = grad_of_vector(displacement(w), k);
    const Tensor P = micro(w);
    const Tensor E = add(G, P, -1.0);
    double W = e.mu_e * norm2(sym(E)) + 0.5 * e.lambda_e * std::norm(tr(E)) + e.mu_c * norm2(skew(E)) +
               e.mu_micro * norm2(sym(P)) + 0.5 * e.lambda_micro * std::norm(tr(P));
    const double c = 0.5 * e.mu_e * e.L_c * e.L_c;
    const auto dv = div(P, k);
    const double div2 = std::norm(dv[0]) + std::norm(dv[1]) + std::norm(dv[2]);
    const double curl2 = norm2(curl(P, k));
    double grad2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) grad2 += std::norm(d(0, k, P[i][j]));
    switch (model) {
    case ModelKind::RelaxedCurl: W += c * curl2; break;
    case ModelKind::RelaxedDivCurl: W += c * (div2 + curl2); break;
    case ModelKind::RelaxedDiv: W += c * div2; break;
    case ModelKind::MindlinEringen: W += c * grad2; break;
    case ModelKind::InternalVariable: break;
    }
    return W;
}

/// Kinetic energy density with u_t -> u, P_t -> P.
inline double kinetic_energy(const micromorph::InertiaParams& in, double k, const Amplitudes& w)
{
    const Tensor G = grad_of_vector(displacement(w), k);
    double J = 0.0;
    for (int i = 0; i < 3; ++i) J += 0.5 * in.rho * std::norm(w[i]);
    for (int i = 3; i < 12; ++i) J += 0.5 * in.eta * std::norm(w[i]);
    J += 0.5 * in.eta_bar_1 * norm2(dev(sym(G))) + 0.5 * in.eta_bar_2 * norm2(skew(G)) +
         in.eta_bar_3 / 6.0 * std::norm(tr(G));
    return J;
}

} // namespace oracle
