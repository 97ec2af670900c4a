#pragma once

// Test-only eigenvalue oracle for 3x3 Hermitian pencils: roots of the
// characteristic polynomial det(K - lambda M), found with the trigonometric
// cubic formula and polished by Newton steps. Shares no code with the Jacobi path.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;
using Mat3 = std::array<std::array<cplx, 3>, 3>;

inline cplx det3(const Mat3& a)
{
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Coefficients c[0..3] with det(K - lambda M) = sum c[p] lambda^p, from the
/// column-wise multilinear expansion of the determinant.
inline std::array<double, 4> char_poly(const Mat3& K, const Mat3& M)
{
    std::array<cplx, 4> c{};
    for (int mask = 0; mask < 8; ++mask) {
        Mat3 mixed{};
        int picked = 0;
        for (int col = 0; col < 3; ++col) {
            const bool from_m = (mask >> col) & 1;
            picked += from_m ? 1 : 0;
            for (int row = 0; row < 3; ++row) mixed[row][col] = from_m ? M[row][col] : K[row][col];
        }
        const double sign = (picked % 2 == 0) ? 1.0 : -1.0;
        c[static_cast<std::size_t>(picked)] += sign * det3(mixed);
    }
    return {c[0].real(), c[1].real(), c[2].real(), c[3].real()};
}

inline double eval(const std::array<double, 4>& c, double x)
{
    return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
}

inline double eval_d(const std::array<double, 4>& c, double x)
{
    return (3.0 * c[3] * x + 2.0 * c[2]) * x + c[1];
}

/// The three real roots, ascending.
inline std::array<double, 3> pencil_eigenvalues(const Mat3& K, const Mat3& M)
{
    const auto c = char_poly(K, M);
    const double a = c[2] / c[3];
    const double b = c[1] / c[3];
    const double d = c[0] / c[3];

    // x = t - a/3  ->  t^3 + p t + q = 0
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    std::array<double, 3> roots{};
    if (p >= 0.0) { // only reachable for a triple root in exact arithmetic
        roots.fill(-a / 3.0 + std::cbrt(-q));
    } else {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int j = 0; j < 3; ++j) {
            roots[static_cast<std::size_t>(j)] =
                r * std::cos(phi - 2.0 * std::numbers::pi * j / 3.0) - a / 3.0;
        }
    }
    for (double& x : roots) {
        for (int it = 0; it < 8; ++it) {
            const double f = eval(c, x);
            const double df = eval_d(c, x);
            if (df == 0.0) break;
            const double step = f / df;
            x -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Root finding from the polynomial is ill-conditioned at repeated roots
/// (error ~ sqrt(eps)); comparisons against the oracle need distinct ones.
inline bool well_separated(const std::array<double, 3>& r, double rel_gap = 1e-4)
{
    const double scale = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    return r[1] - r[0] > rel_gap * scale && r[2] - r[1] > rel_gap * scale;
}

template <typename EigenMat>
Mat3 from_eigen(const EigenMat& m)
{
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    return out;
}

} // namespace oracle
