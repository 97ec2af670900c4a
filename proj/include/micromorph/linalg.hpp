#pragma once

#include <complex>

#include <Eigen/Dense>

namespace micromorph {

using cplx = std::complex<double>;

/// Amplitude vector (u1,u2,u3, P11,P12,P13, P21,...,P33) of a plane wave.
inline constexpr int kFullDofs = 12;
/// Each invariant block carries three amplitudes.
inline constexpr int kBlockDofs = 3;

using FullMatrix = Eigen::Matrix<cplx, kFullDofs, kFullDofs>;
using FullVector = Eigen::Matrix<cplx, kFullDofs, 1>;
using BlockMatrix = Eigen::Matrix<cplx, kBlockDofs, kBlockDofs>;
using BlockVector = Eigen::Matrix<cplx, kBlockDofs, 1>;

/// Largest absolute entry, used as the scale for relative tolerances.
template <typename Derived>
[[nodiscard]] double max_abs(const Eigen::MatrixBase<Derived>& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
[[nodiscard]] double hermitian_defect(const Eigen::MatrixBase<Derived>& m)
{
    return max_abs(m - m.adjoint());
}

} // namespace micromorph
