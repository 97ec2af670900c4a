#pragma once

// Plane-wave reduction of the micromorphic equations of motion.
//
// Fields vary as exp(i(k x1 - w t)). The amplitude vector is
//   w = (u1, u2, u3, P11, P12, P13, P21, P22, P23, P31, P32, P33)
// and the dynamics become the pencil (K(k) - w^2 M(k)) w = 0 with
//   M(k) = M0 + k^2 M2,   K(k) = K0 + k K1 + k^2 K2.
//
// Every matrix is built as the Hessian of a quadratic energy written through
// linear tensor operators of w (gradients, sym/skew/trace projections, Curl,
// Div), so Hermiticity holds by construction. The strong form obtained from
// these energies is
//   rho u_tt - Div I = Div sigma,   eta P_tt = sigma - s - (curvature term)
// with I the gradient micro-inertia flux.

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "micromorph/core.hpp"
#include "micromorph/errors.hpp"
#include "micromorph/linalg.hpp"

namespace micromorph {

namespace dof {
[[nodiscard]] inline constexpr int u(int i) { return i; }
[[nodiscard]] inline constexpr int P(int i, int j) { return 3 + 3 * i + j; }
} // namespace dof

struct FullSystem {
    ModelKind model{};
    FullMatrix M0 = FullMatrix::Zero();
    FullMatrix M2 = FullMatrix::Zero();
    FullMatrix K0 = FullMatrix::Zero();
    FullMatrix K1 = FullMatrix::Zero();
    FullMatrix K2 = FullMatrix::Zero();

    [[nodiscard]] FullMatrix mass(double k) const { return M0 + (k * k) * M2; }
    [[nodiscard]] FullMatrix stiffness(double k) const { return K0 + k * K1 + (k * k) * K2; }
};

namespace detail {

// A linear map from the amplitude vector to some tensor, split by its power of
// the wavenumber: L(k) w = (c0 + k c1) w. Rows enumerate tensor components.
struct PlaneWaveOperator {
    Eigen::MatrixXcd c0;
    Eigen::MatrixXcd c1;

    explicit PlaneWaveOperator(Eigen::Index rows)
        : c0(Eigen::MatrixXcd::Zero(rows, kFullDofs)), c1(Eigen::MatrixXcd::Zero(rows, kFullDofs))
    {
    }
};

inline constexpr cplx kI{0.0, 1.0};

// Only d/dx1 survives the ansatz, and it contributes a factor i k.

// (grad u)_ij = u_i,j
inline PlaneWaveOperator displacement_gradient()
{
    PlaneWaveOperator op(9);
    for (int i = 0; i < 3; ++i) op.c1(3 * i + 0, dof::u(i)) = kI;
    return op;
}

inline PlaneWaveOperator micro_distortion()
{
    PlaneWaveOperator op(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) op.c0(3 * i + j, dof::P(i, j)) = 1.0;
    return op;
}

inline PlaneWaveOperator minus(const PlaneWaveOperator& a, const PlaneWaveOperator& b)
{
    PlaneWaveOperator op(a.c0.rows());
    op.c0 = a.c0 - b.c0;
    op.c1 = a.c1 - b.c1;
    return op;
}

// Tensor projections act row-wise on 9-row operators.
template <typename RowMix>
PlaneWaveOperator mix_tensor_rows(const PlaneWaveOperator& a, RowMix mix)
{
    PlaneWaveOperator op(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            op.c0.row(3 * i + j) = mix(a.c0, i, j);
            op.c1.row(3 * i + j) = mix(a.c1, i, j);
        }
    return op;
}

inline PlaneWaveOperator sym(const PlaneWaveOperator& a)
{
    return mix_tensor_rows(a, [](const Eigen::MatrixXcd& m, int i, int j) -> Eigen::RowVectorXcd {
        return 0.5 * (m.row(3 * i + j) + m.row(3 * j + i));
    });
}

inline PlaneWaveOperator skew(const PlaneWaveOperator& a)
{
    return mix_tensor_rows(a, [](const Eigen::MatrixXcd& m, int i, int j) -> Eigen::RowVectorXcd {
        return 0.5 * (m.row(3 * i + j) - m.row(3 * j + i));
    });
}

inline PlaneWaveOperator trace(const PlaneWaveOperator& a)
{
    PlaneWaveOperator op(1);
    op.c0.row(0) = a.c0.row(0) + a.c0.row(4) + a.c0.row(8);
    op.c1.row(0) = a.c1.row(0) + a.c1.row(4) + a.c1.row(8);
    return op;
}

inline PlaneWaveOperator dev(const PlaneWaveOperator& a)
{
    const PlaneWaveOperator tr = trace(a);
    PlaneWaveOperator op = a;
    for (int d = 0; d < 3; ++d) {
        op.c0.row(4 * d) -= tr.c0.row(0) / 3.0;
        op.c1.row(4 * d) -= tr.c1.row(0) / 3.0;
    }
    return op;
}

inline constexpr int levi_civita(int a, int b, int c)
{
    return (a - b) * (b - c) * (c - a) / 2;
}

// (Curl P)_ij = eps_jkh P_ih,k
inline PlaneWaveOperator curl_micro()
{
    PlaneWaveOperator op(9);
    constexpr int k = 0; // x1
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int h = 0; h < 3; ++h) {
                const int eps = levi_civita(j, k, h);
                if (eps != 0) op.c1(3 * i + j, dof::P(i, h)) += static_cast<double>(eps) * kI;
            }
    return op;
}

// (Div P)_i = P_ij,j
inline PlaneWaveOperator div_micro()
{
    PlaneWaveOperator op(3);
    for (int i = 0; i < 3; ++i) op.c1(i, dof::P(i, 0)) = kI;
    return op;
}

// (grad P)_ijk = P_ij,k
inline PlaneWaveOperator grad_micro()
{
    PlaneWaveOperator op(27);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) op.c1(9 * i + 3 * j + 0, dof::P(i, j)) = kI;
    return op;
}

// Adds the Hessian of coef * |L(k) w|^2 to K0, K1, K2.
inline void add_quadratic(FullSystem& sys, double coef, const PlaneWaveOperator& op)
{
    sys.K0 += coef * (op.c0.adjoint() * op.c0);
    sys.K1 += coef * (op.c0.adjoint() * op.c1 + op.c1.adjoint() * op.c0);
    sys.K2 += coef * (op.c1.adjoint() * op.c1);
}

// Gradient inertia only has a k^1 part (grad u_t), so it lands in M2.
inline void add_gradient_inertia(FullSystem& sys, double coef, const PlaneWaveOperator& op)
{
    sys.M2 += coef * (op.c1.adjoint() * op.c1);
}

} // namespace detail

/// Builds the full 12x12 pencil of `model`. Validate the parameters first;
/// this function does not re-check them.
[[nodiscard]] inline FullSystem assemble_full(ModelKind model, const ElasticParams& e,
                                              const InertiaParams& in)
{
    using namespace detail;

    FullSystem sys;
    sys.model = model;

    const PlaneWaveOperator grad_u = displacement_gradient();
    const PlaneWaveOperator P = micro_distortion();
    const PlaneWaveOperator elastic_strain = minus(grad_u, P);

    // Energy coefficients enter doubled: the Hessian of mu |A|^2 is 2 mu A^H A.
    add_quadratic(sys, 2.0 * e.mu_e, sym(elastic_strain));
    add_quadratic(sys, e.lambda_e, trace(elastic_strain));
    add_quadratic(sys, 2.0 * e.mu_c, skew(elastic_strain));
    add_quadratic(sys, 2.0 * e.mu_micro, sym(P));
    add_quadratic(sys, e.lambda_micro, trace(P));

    // Curvature energies are written (mu_e L_c^2 / 2) |.|^2.
    const double curvature = e.mu_e * e.L_c * e.L_c;
    switch (model) {
    case ModelKind::RelaxedCurl:
        add_quadratic(sys, curvature, curl_micro());
        break;
    case ModelKind::RelaxedDivCurl:
        add_quadratic(sys, curvature, div_micro());
        add_quadratic(sys, curvature, curl_micro());
        break;
    case ModelKind::RelaxedDiv:
        add_quadratic(sys, curvature, div_micro());
        break;
    case ModelKind::MindlinEringen:
        add_quadratic(sys, curvature, grad_micro());
        break;
    case ModelKind::InternalVariable:
        break;
    default:
        throw InputError("assemble_full: unknown model variant");
    }

    for (int i = 0; i < 3; ++i) sys.M0(dof::u(i), dof::u(i)) = in.rho;
    for (int i = 0; i < 9; ++i) sys.M0(3 + i, 3 + i) = in.eta;

    // Kinetic energy 1/2 eb1 |dev sym grad u_t|^2 + 1/2 eb2 |skew grad u_t|^2
    //              + 1/6 eb3 tr(grad u_t)^2
    add_gradient_inertia(sys, in.eta_bar_1, dev(sym(grad_u)));
    add_gradient_inertia(sys, in.eta_bar_2, skew(grad_u));
    add_gradient_inertia(sys, in.eta_bar_3 / 3.0, trace(grad_u));

    return sys;
}

/// Orthonormal change of basis separating the four invariant blocks.
/// Row r of `T` is the r-th block coordinate expressed in the original
/// amplitudes; block b occupies rows 3b..3b+2.
struct BlockBasis {
    FullMatrix T = FullMatrix::Zero();
    std::array<std::array<std::string_view, 3>, 4> labels{};

    [[nodiscard]] static std::array<int, 3> partition(WaveBlock b)
    {
        const int base = 3 * static_cast<int>(block_index(b));
        return {base, base + 1, base + 2};
    }
};

[[nodiscard]] inline const BlockBasis& block_basis()
{
    static const BlockBasis basis = [] {
        BlockBasis b;
        const double r2 = 1.0 / std::sqrt(2.0);
        const double r3 = 1.0 / std::sqrt(3.0);
        const double r6 = 1.0 / std::sqrt(6.0);
        auto& T = b.T;
        using dof::P;
        using dof::u;

        // Longitudinal: u1, P^S, P^D
        T(0, u(0)) = 1.0;
        T(1, P(0, 0)) = r3;
        T(1, P(1, 1)) = r3;
        T(1, P(2, 2)) = r3;
        T(2, P(0, 0)) = 2.0 * r6;
        T(2, P(1, 1)) = -r6;
        T(2, P(2, 2)) = -r6;

        // Transverse (xi = 2, 3): u_xi, P_(1xi), P_[1xi]
        for (int xi = 1; xi <= 2; ++xi) {
            const int row = 3 * xi;
            T(row, u(xi)) = 1.0;
            T(row + 1, P(0, xi)) = r2;
            T(row + 1, P(xi, 0)) = r2;
            T(row + 2, P(0, xi)) = r2;
            T(row + 2, P(xi, 0)) = -r2;
        }

        // Uncoupled: P_(23), P_[23], P^V
        T(9, P(1, 2)) = r2;
        T(9, P(2, 1)) = r2;
        T(10, P(1, 2)) = r2;
        T(10, P(2, 1)) = -r2;
        T(11, P(1, 1)) = r2;
        T(11, P(2, 2)) = -r2;

        b.labels = {{{"u1", "P^S", "P^D"},
                     {"u2", "P_(12)", "P_[12]"},
                     {"u3", "P_(13)", "P_[13]"},
                     {"P_(23)", "P_[23]", "P^V"}}};
        return b;
    }();
    return basis;
}

[[nodiscard]] inline const std::array<std::string_view, 3>& dof_labels(WaveBlock b)
{
    return block_basis().labels[block_index(b)];
}

struct BlockSystem {
    WaveBlock block{};
    BlockMatrix M0 = BlockMatrix::Zero();
    BlockMatrix M2 = BlockMatrix::Zero();
    BlockMatrix K0 = BlockMatrix::Zero();
    BlockMatrix K1 = BlockMatrix::Zero();
    BlockMatrix K2 = BlockMatrix::Zero();
    std::array<std::string_view, 3> labels{};

    [[nodiscard]] BlockMatrix mass(double k) const { return M0 + (k * k) * M2; }
    [[nodiscard]] BlockMatrix stiffness(double k) const { return K0 + k * K1 + (k * k) * K2; }
};

inline constexpr double kBlockLeakageTolerance = 1.0e-12;

/// The five coefficient matrices of `sys` in block coordinates.
[[nodiscard]] inline std::array<FullMatrix, 5> to_block_coordinates(const FullSystem& sys)
{
    const FullMatrix& T = block_basis().T;
    const FullMatrix Th = T.adjoint();
    return {T * sys.M0 * Th, T * sys.M2 * Th, T * sys.K0 * Th, T * sys.K1 * Th, T * sys.K2 * Th};
}

/// Largest off-block entry of any transformed coefficient matrix, relative to
/// that matrix's largest entry.
[[nodiscard]] inline double block_leakage(const FullSystem& sys)
{
    double worst = 0.0;
    for (const FullMatrix& m : to_block_coordinates(sys)) {
        const double scale = max_abs(m);
        if (scale == 0.0) continue;
        FullMatrix off = m;
        for (int b = 0; b < 4; ++b) off.block<3, 3>(3 * b, 3 * b).setZero();
        worst = std::max(worst, max_abs(off) / scale);
    }
    return worst;
}

[[nodiscard]] inline std::array<BlockSystem, 4> block_decompose(const FullSystem& sys)
{
    const double leak = block_leakage(sys);
    if (leak > kBlockLeakageTolerance) {
        throw BlockLeakage("block_decompose: off-block residual " + std::to_string(leak) +
                           " exceeds tolerance for model " + std::string(to_string(sys.model)));
    }
    const auto coeffs = to_block_coordinates(sys);
    std::array<BlockSystem, 4> out;
    for (WaveBlock b : kAllBlocks) {
        const int o = 3 * static_cast<int>(block_index(b));
        BlockSystem& bs = out[block_index(b)];
        bs.block = b;
        bs.M0 = coeffs[0].block<3, 3>(o, o);
        bs.M2 = coeffs[1].block<3, 3>(o, o);
        bs.K0 = coeffs[2].block<3, 3>(o, o);
        bs.K1 = coeffs[3].block<3, 3>(o, o);
        bs.K2 = coeffs[4].block<3, 3>(o, o);
        bs.labels = dof_labels(b);
    }
    return out;
}

[[nodiscard]] inline BlockSystem assemble_block(ModelKind model, const ElasticParams& e,
                                                const InertiaParams& in, WaveBlock b)
{
    return block_decompose(assemble_full(model, e, in))[block_index(b)];
}

} // namespace micromorph
