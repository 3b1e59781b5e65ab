#include "stokeseig/reference.hpp"

#include <cmath>
#include <functional>

#include "stokeseig/errors.hpp"

namespace stokeseig {

namespace {

constexpr double kScanStep = 0.01;

double bisect(const std::function<double(double)>& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double k_min, double k_max) {
    std::vector<double> out;
    const int steps = std::max(1, static_cast<int>(std::ceil((k_max - k_min) / kScanStep)));
    double a = k_min, fa = f(a);
    if (fa == 0.0) out.push_back(a);
    for (int s = 1; s <= steps; ++s) {
        const double b = s == steps ? k_max : k_min + s * (k_max - k_min) / steps;
        const double fb = f(b);
        if (fb == 0.0) {
            out.push_back(b);
        } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
            out.push_back(bisect(f, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    return out;
}

void check_window(double k_min, double k_max) {
    if (!(k_min > 0.0)) throw DomainError("reference: window must exclude k = 0");
    if (!(k_max > k_min)) throw DomainError("reference: requires k_min < k_max");
}

}  // namespace

Eigen::Matrix2cd annulus_radial_matrix(double r1, double r2, double k) {
    // H0' = -H1 and J0' = -J1.
    Eigen::Matrix2cd M;
    M << -hankel1(1, k * r1), -bessel_j(1, k * r1), -hankel1(1, k * r2), -bessel_j(1, k * r2);
    return M;
}

TranscendentalRoots annulus_dirichlet_roots(double r1, double r2, double k_min, double k_max) {
    if (!(r1 > 0.0) || !(r2 > r1)) throw DomainError("annulus_dirichlet_roots: requires 0 < r1 < r2");
    check_window(k_min, k_max);
    auto f = [&](double k) {
        return bessel_j(1, k * r1) * bessel_y(1, k * r2) - bessel_j(1, k * r2) * bessel_y(1, k * r1);
    };
    TranscendentalRoots out;
    out.function = "annulus_radial_dirichlet";
    out.roots = scan_roots(f, k_min, k_max);
    for (const double k : out.roots) out.residuals.push_back(std::abs(annulus_radial_matrix(r1, r2, k).determinant()));
    return out;
}

Eigen::Vector2cd AnnulusMode::velocity(const Vec2& x) const {
    const double r = x.norm();
    if (!(r > 0.0)) throw DomainError("AnnulusMode::velocity: r must be positive");
    const cdouble dpsi = -k * (alpha * hankel1(1, k * r) + beta * bessel_j(1, k * r));
    return Eigen::Vector2cd(-dpsi * x.y() / r, dpsi * x.x() / r);
}

AnnulusMode annulus_eigenfunction(double r1, double r2, double k_root) {
    const Eigen::Matrix2cd M = annulus_radial_matrix(r1, r2, k_root);
    // Null vector from whichever row is larger, for conditioning.
    const int row = M.row(0).norm() >= M.row(1).norm() ? 0 : 1;
    Eigen::Vector2cd v(M(row, 1), -M(row, 0));
    v /= v.norm();
    AnnulusMode mode;
    mode.k = k_root;
    mode.alpha = v(0);
    mode.beta = v(1);
    mode.residual = (M * v).norm();
    if (mode.residual > 1e-10) {
        throw DomainError("annulus_eigenfunction: k = " + std::to_string(k_root) + " is not a root (residual " +
                          std::to_string(mode.residual) + ")");
    }
    return mode;
}

TranscendentalRoots disk_neumann_roots(double k_min, double k_max) {
    check_window(k_min, k_max);
    auto f = [](double k) {
        const double j0 = bessel_j(0, k), j1 = bessel_j(1, k);
        const double dj0 = -j1;
        const double d2j0 = -j0 + j1 / k;
        return -k * dj0 + k * k * d2j0;
    };
    TranscendentalRoots out;
    out.function = "disk_neumann";
    out.roots = scan_roots(f, k_min, k_max);
    for (const double k : out.roots) out.residuals.push_back(std::abs(f(k)));
    return out;
}

}  // namespace stokeseig
