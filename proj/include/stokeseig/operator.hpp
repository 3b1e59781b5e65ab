#pragma once

/**
 * @file operator.hpp
 * @brief Second-kind system matrices A(k) = I - 2D - 2W (double layer) or
 * I - 2D - 2i eta S - 2W (combined field), determinants and smallest singular values.
 */

#include <Eigen/Core>

#include "stokeseig/geometry.hpp"
#include "stokeseig/potentials.hpp"
#include "stokeseig/quadrature.hpp"

namespace stokeseig {

struct SystemOptions {
    bool include_w = true;
    /// Permit the double-layer formulation on multiply connected boundaries, where it
    /// has spurious zeros at interior Neumann eigenvalues of the inclusions.
    bool allow_double_layer_multiply_connected = false;
};

struct SystemMatrix {
    Eigen::MatrixXcd A;
    KernelContext ctx;
    const BoundaryPanels* panels = nullptr;
};

/// Weighted Nystrom matrix of W; 2x2 block (i, j) is nu_i nu_j^T w_j / |Gamma|.
Eigen::MatrixXd w_matrix(const BoundaryPanels& panels);

/// Assemble A(k) with an existing quadrature plan.
SystemMatrix build_system(const KernelContext& ctx, const BoundaryPanels& panels, const QuadraturePlan& plan,
                          const SystemOptions& opt = {});

/// Assemble A(k), planning the quadrature at ctx.k.
SystemMatrix build_system(const KernelContext& ctx, const BoundaryPanels& panels, const SystemOptions& opt = {},
                          const QuadratureOptions& qopt = {});

/// Determinant as exp(log_abs) * phase, so that large systems cannot overflow.
struct LogDet {
    double log_abs = 0.0;  ///< -inf for an exactly singular matrix
    cdouble phase{1.0, 0.0};
    cdouble value(double log_scale = 0.0) const;
};

/// LU with partial pivoting.
LogDet log_determinant(const Eigen::MatrixXcd& A);

struct SingularTriplets {
    Eigen::VectorXd values;    ///< ascending
    Eigen::MatrixXcd vectors;  ///< right singular vectors, one per column
};

/// The `count` smallest singular values with right singular vectors. Dense SVD
/// for moderate sizes, LU-based inverse subspace iteration otherwise.
enum class SvdMethod { automatic, dense, inverse_iteration };
SingularTriplets smallest_singular_values(const Eigen::MatrixXcd& A, int count,
                                         SvdMethod method = SvdMethod::automatic);

/// Size above which smallest_singular_values switches to inverse iteration.
inline constexpr int kDenseSvdLimit = 1600;

}  // namespace stokeseig
