#pragma once

// Small dense generalized Hermitian eigensolver for K v = lambda M v.
//
// M = L L^H (Cholesky), the standard problem C = L^-1 K L^-H is diagonalized
// by cyclic complex Jacobi rotations and the vectors are mapped back with
// v = L^-H y, which makes them M-orthonormal.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "micromorph/errors.hpp"
#include "micromorph/linalg.hpp"

namespace micromorph {

struct EigenSolution {
    std::vector<double> omega_sq; // ascending
    Eigen::MatrixXcd vectors;     // column j pairs with omega_sq[j]

    [[nodiscard]] Eigen::Index size() const { return static_cast<Eigen::Index>(omega_sq.size()); }
};

struct EigenOptions {
    double hermitian_tol = 1.0e-12;  // relative asymmetry allowed in K and M
    double pivot_tol = 1.0e-14;      // Cholesky pivot floor, times trace(M)/n
    double offdiag_tol = 1.0e-14;    // Jacobi stop, relative to ||C||_F
    double negative_tol = 1.0e-9;    // clamp window, times ||K|| / ||M||
    int max_sweeps = 100;
};

namespace detail {

inline void require_hermitian(const Eigen::MatrixXcd& a, double tol, const char* name)
{
    const double scale = max_abs(a);
    if (hermitian_defect(a) > tol * std::max(scale, 1e-300)) {
        throw NotHermitian(std::string("general_eig: ") + name + " is not Hermitian");
    }
}

inline Eigen::MatrixXcd cholesky_lower(const Eigen::MatrixXcd& m, double pivot_tol)
{
    const Eigen::Index n = m.rows();
    const double floor = pivot_tol * std::abs(m.trace().real()) / static_cast<double>(n);
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = m(j, j).real();
        for (Eigen::Index p = 0; p < j; ++p) d -= std::norm(L(j, p));
        if (!(d > floor)) {
            throw NotPositiveDefinite("general_eig: mass matrix pivot " + std::to_string(j) +
                                      " = " + std::to_string(d) + " below floor");
        }
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            cplx s = m(i, j);
            for (Eigen::Index p = 0; p < j; ++p) s -= L(i, p) * std::conj(L(j, p));
            L(i, j) = s / ljj;
        }
    }
    return L;
}

inline double offdiag_norm(const Eigen::MatrixXcd& a)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Diagonalizes Hermitian `a` in place; accumulates the unitary in `v`.
inline void jacobi_hermitian(Eigen::MatrixXcd& a, Eigen::MatrixXcd& v, double tol, int max_sweeps)
{
    const Eigen::Index n = a.rows();
    v = Eigen::MatrixXcd::Identity(n, n);
    const double stop = tol * std::max(a.norm(), 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) <= stop) return;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq == 0.0) continue;

                // Rotate the phase of a_pq away, then annihilate it with a real
                // rotation: U = diag(1, e^{-i phi}) * [[c, s], [-s, c]].
                const cplx phase = a(p, q) / apq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const cplx g00 = c;
                const cplx g01 = s;
                const cplx g10 = -s * std::conj(phase);
                const cplx g11 = c * std::conj(phase);

                for (Eigen::Index r = 0; r < n; ++r) { // a <- a U
                    const cplx x = a(r, p);
                    const cplx y = a(r, q);
                    a(r, p) = x * g00 + y * g10;
                    a(r, q) = x * g01 + y * g11;
                }
                for (Eigen::Index r = 0; r < n; ++r) { // a <- U^H a
                    const cplx x = a(p, r);
                    const cplx y = a(q, r);
                    a(p, r) = std::conj(g00) * x + std::conj(g10) * y;
                    a(q, r) = std::conj(g01) * x + std::conj(g11) * y;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (Eigen::Index r = 0; r < n; ++r) { // v <- v U
                    const cplx x = v(r, p);
                    const cplx y = v(r, q);
                    v(r, p) = x * g00 + y * g10;
                    v(r, q) = x * g01 + y * g11;
                }
            }
        }
    }
    if (offdiag_norm(a) > stop) throw NumericalError("general_eig: Jacobi sweeps did not converge");
}

} // namespace detail

/// Scales `v` so its largest-magnitude component is real and positive.
inline void normalize_phase(Eigen::Ref<Eigen::VectorXcd> v)
{
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        // ties go to the first index; the 1e-12 margin keeps that stable
        if (std::abs(v(i)) > best * (1.0 + 1e-12)) {
            best = std::abs(v(i));
            imax = i;
        }
    }
    if (best > 0.0) v *= std::conj(v(imax)) / best;
}

/// Eigenpairs of the pencil (K, M), M Hermitian positive definite, K Hermitian.
/// Eigenvalues are returned ascending; tiny negatives from round-off are
/// clamped to 0, anything more negative raises NegativeEigenvalue.
[[nodiscard]] inline EigenSolution general_eig(const Eigen::MatrixXcd& K, const Eigen::MatrixXcd& M,
                                               const EigenOptions& opt = {})
{
    if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows() || K.rows() == 0) {
        throw InputError("general_eig: K and M must be square and of equal size");
    }
    detail::require_hermitian(K, opt.hermitian_tol, "K");
    detail::require_hermitian(M, opt.hermitian_tol, "M");

    const Eigen::Index n = K.rows();
    const Eigen::MatrixXcd L = detail::cholesky_lower(M, opt.pivot_tol);

    // C = L^-1 K L^-H
    const auto Lv = L.triangularView<Eigen::Lower>();
    Eigen::MatrixXcd X = Lv.solve(K);                       // L^-1 K
    Eigen::MatrixXcd C = Lv.solve(X.adjoint()).adjoint();   // (L^-1 (L^-1 K)^H)^H
    C = 0.5 * (C + C.adjoint());

    Eigen::MatrixXcd Y;
    detail::jacobi_hermitian(C, Y, opt.offdiag_tol, opt.max_sweeps);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&C](Eigen::Index a, Eigen::Index b) { return C(a, a).real() < C(b, b).real(); });

    const Eigen::MatrixXcd V = L.adjoint().triangularView<Eigen::Upper>().solve(Y); // L^-H Y
    const double neg_floor = -opt.negative_tol * K.norm() / M.norm();

    EigenSolution sol;
    sol.omega_sq.reserve(static_cast<std::size_t>(n));
    sol.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        double lambda = C(src, src).real();
        if (lambda < 0.0) {
            if (lambda < neg_floor) {
                throw NegativeEigenvalue("general_eig: eigenvalue " + std::to_string(lambda) +
                                         " is negative beyond tolerance");
            }
            lambda = 0.0;
        }
        sol.omega_sq.push_back(lambda);
        sol.vectors.col(j) = V.col(src);
        normalize_phase(sol.vectors.col(j));
    }
    return sol;
}

} // namespace micromorph
