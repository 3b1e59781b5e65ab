#include "stokeseig/operator.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "stokeseig/errors.hpp"

namespace stokeseig {

Eigen::MatrixXd w_matrix(const BoundaryPanels& panels) {
    const int n = panels.num_nodes();
    Eigen::VectorXd left(2 * n), right(2 * n);
    for (int i = 0; i < n; ++i) {
        left.segment<2>(2 * i) = panels.nu.col(i);
        right.segment<2>(2 * i) = panels.nu.col(i) * panels.weights(i) / panels.total_length;
    }
    return left * right.transpose();
}

SystemMatrix build_system(const KernelContext& ctx, const BoundaryPanels& panels, const QuadraturePlan& plan,
                          const SystemOptions& opt) {
    ctx.validate();
    if (panels.num_components() > 1 && ctx.formulation == Formulation::double_layer &&
        !opt.allow_double_layer_multiply_connected) {
        throw DomainError("double-layer formulation on a multiply connected boundary requires an explicit override");
    }
    const bool combined = ctx.formulation == Formulation::combined_field;
    LayerRequest req;
    req.double_layer = true;
    req.single = combined;
    LayerMatrices L = assemble_layers(ctx.k, panels, plan, req);
    SystemMatrix sys;
    sys.ctx = ctx;
    sys.panels = &panels;
    sys.A = -2.0 * L.D;
    if (combined) sys.A -= cdouble(0.0, 2.0 * ctx.eta) * L.S;
    if (opt.include_w) sys.A -= 2.0 * w_matrix(panels).cast<cdouble>();
    sys.A.diagonal().array() += 1.0;
    return sys;
}

SystemMatrix build_system(const KernelContext& ctx, const BoundaryPanels& panels, const SystemOptions& opt,
                          const QuadratureOptions& qopt) {
    ctx.validate();
    return build_system(ctx, panels, make_plan(panels, ctx.k, qopt), opt);
}

cdouble LogDet::value(double log_scale) const {
    if (std::isinf(log_abs) && log_abs < 0) return 0.0;
    return std::exp(log_abs - log_scale) * phase;
}

LogDet log_determinant(const Eigen::MatrixXcd& A) {
    if (A.rows() != A.cols()) throw DomainError("log_determinant: matrix must be square");
    LogDet out;
    if (A.rows() == 0) return out;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const auto& U = lu.matrixLU();
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        const double m = std::abs(U(i, i));
        if (m == 0.0) {
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.phase = 0.0;
            return out;
        }
        out.log_abs += std::log(m);
        out.phase *= U(i, i) / m;
    }
    out.phase *= static_cast<double>(lu.permutationP().determinant());
    return out;
}

namespace {

SingularTriplets dense_smallest(const Eigen::MatrixXcd& A, int count) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    const Eigen::Index n = A.cols();
    SingularTriplets out;
    out.values.resize(count);
    out.vectors.resize(n, count);
    for (int c = 0; c < count; ++c) {
        out.values(c) = svd.singularValues()(n - 1 - c);
        out.vectors.col(c) = svd.matrixV().col(n - 1 - c);
    }
    return out;
}

// Rayleigh-Ritz on span(V): singular values of A V, ascending.
SingularTriplets ritz(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& V, int count) {
    const Eigen::MatrixXcd AV = A * V;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(AV, Eigen::ComputeThinV);
    const Eigen::Index p = V.cols();
    SingularTriplets out;
    out.values.resize(count);
    out.vectors.resize(V.rows(), count);
    for (int c = 0; c < count; ++c) {
        out.values(c) = svd.singularValues()(p - 1 - c);
        out.vectors.col(c) = V * svd.matrixV().col(p - 1 - c);
    }
    return out;
}

}  // namespace

SingularTriplets smallest_singular_values(const Eigen::MatrixXcd& A, int count, SvdMethod method) {
    if (A.rows() != A.cols()) throw DomainError("smallest_singular_values: matrix must be square");
    if (count < 1 || count > A.cols()) throw DomainError("smallest_singular_values: invalid count");
    const Eigen::Index n = A.cols();
    if (method == SvdMethod::dense || (method == SvdMethod::automatic && n <= kDenseSvdLimit)) {
        return dense_smallest(A, count);
    }

    // Inverse subspace iteration on (B^H B)^{-1} finds one triplet at a time. Each found
    // pair is lifted out of the spectrum by B += tau u v^H and B is refactored, so a
    // near-null direction never swamps the next one. Start blocks are deterministic.
    const double tau = A.norm() / std::sqrt(static_cast<double>(n));
    const double noise = 10.0 * std::numeric_limits<double>::epsilon() * A.norm();
    constexpr int kMaxIter = 200;
    Eigen::MatrixXcd B = A;
    Eigen::MatrixXcd found(n, count);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    for (int j = 0; j < count; ++j) {
        lu.compute(B);
        if ((lu.matrixLU().diagonal().cwiseAbs().array() == 0.0).any()) return dense_smallest(A, count);
        const int p = static_cast<int>(std::min<Eigen::Index>(n, 4));
        Eigen::MatrixXcd V(n, p);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (int c = 0; c < p; ++c) V(i, c) = cdouble(std::sin(1.0 + i * (c + j + 1.3)), std::cos(0.7 * i + c + j));
        }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(V);
        V = qr.householderQ() * Eigen::MatrixXcd::Identity(n, p);
        double prev = std::numeric_limits<double>::infinity();
        SingularTriplets r;
        for (int it = 0; it < kMaxIter; ++it) {
            const Eigen::MatrixXcd Y = lu.adjoint().solve(V);
            qr.compute(lu.solve(Y));
            V = qr.householderQ() * Eigen::MatrixXcd::Identity(n, p);
            r = ritz(B, V, 1);
            if (std::abs(r.values(0) - prev) <= 1e-12 * r.values(0) + noise) break;
            prev = r.values(0);
        }
        const Eigen::VectorXcd v = r.vectors.col(0);
        found.col(j) = v;
        if (j + 1 < count) {
            Eigen::VectorXcd u = lu.adjoint().solve(v);
            u /= u.norm();
            B.noalias() += tau * u * v.adjoint();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qf(found);
    const Eigen::MatrixXcd W = qf.householderQ() * Eigen::MatrixXcd::Identity(n, count);
    SingularTriplets out = ritz(A, W, count);
    return out;
}

}  // namespace stokeseig
