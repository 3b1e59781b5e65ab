#include "stokeseig/chebyshev.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "stokeseig/errors.hpp"

namespace stokeseig {

std::vector<double> lobatto_points(double a, double b, int n) {
    if (n < 1) throw DomainError("lobatto_points: n must be positive");
    std::vector<double> out(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double t = std::cos(std::numbers::pi * j / n);
        out[j] = 0.5 * (a + b) + 0.5 * (b - a) * t;
    }
    return out;
}

Eigen::VectorXcd chebyshev_coefficients(const Eigen::VectorXcd& values) {
    const int n = static_cast<int>(values.size()) - 1;
    if (n < 1) throw DomainError("chebyshev_coefficients: need at least two values");
    Eigen::VectorXcd c(n + 1);
    for (int m = 0; m <= n; ++m) {
        cdouble s = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            // cos(pi m j / n) with the product reduced mod 2n for accuracy.
            const long long q = (static_cast<long long>(m) * j) % (2LL * n);
            s += w * values(j) * std::cos(std::numbers::pi * static_cast<double>(q) / n);
        }
        c(m) = s * (2.0 / n);
    }
    c(0) *= 0.5;
    c(n) *= 0.5;
    return c;
}

cdouble chebyshev_eval(const Eigen::VectorXcd& c, cdouble t) {
    cdouble b1 = 0.0, b2 = 0.0;
    for (Eigen::Index m = c.size() - 1; m >= 1; --m) {
        const cdouble b0 = c(m) + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c.size() == 0 ? cdouble(0.0) : c(0) + t * b1 - b2;
}

Eigen::VectorXcd chebyshev_derivative(const Eigen::VectorXcd& c) {
    const Eigen::Index n = c.size() - 1;
    if (n < 1) return Eigen::VectorXcd::Zero(1);
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n + 1);
    for (Eigen::Index m = n - 1; m >= 0; --m) {
        d(m) = (m + 2 <= n ? d(m + 2) : cdouble(0.0)) + 2.0 * static_cast<double>(m + 1) * c(m + 1);
    }
    d(0) *= 0.5;
    return d.head(n);
}

int chebyshev_degree(const Eigen::VectorXcd& c, double tol) {
    const double big = c.cwiseAbs().maxCoeff();
    if (big == 0.0) return 0;
    for (Eigen::Index m = c.size() - 1; m > 0; --m) {
        if (std::abs(c(m)) > tol * big) return static_cast<int>(m);
    }
    return 0;
}

namespace {

// Parlett-Reinsch diagonal similarity scaling by powers of two.
void balance(Eigen::MatrixXcd& M) {
    const Eigen::Index n = M.rows();
    bool done = false;
    for (int sweep = 0; sweep < 100 && !done; ++sweep) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(M(j, i));
                r += std::abs(M(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((c + r) < 0.95 * s) {
                done = false;
                M.row(i) /= f;
                M.col(i) *= f;
            }
        }
    }
}

}  // namespace

std::vector<cdouble> chebyshev_roots(const Eigen::VectorXcd& c, int degree) {
    if (degree < 1) return {};
    if (degree >= c.size()) throw DomainError("chebyshev_roots: degree exceeds coefficient count");
    const Eigen::VectorXcd p = c.head(degree + 1);
    if (degree == 1) return {-p(0) / p(1)};
    const int n = degree;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    M(0, 1) = 1.0;
    for (int i = 1; i < n - 1; ++i) {
        M(i, i - 1) = 0.5;
        M(i, i + 1) = 0.5;
    }
    M(n - 1, n - 2) = 0.5;
    for (int j = 0; j < n; ++j) M(n - 1, j) -= p(j) / (2.0 * p(n));
    balance(M);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) throw Error("chebyshev_roots: eigenvalue iteration failed");

    // Newton polishing on the series; keeps the better of the start and the iterates.
    const Eigen::VectorXcd dp = chebyshev_derivative(p);
    std::vector<cdouble> out;
    out.reserve(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        cdouble t = es.eigenvalues()(i);
        double best = std::abs(chebyshev_eval(p, t));
        cdouble best_t = t;
        for (int it = 0; it < 20 && best > 0.0; ++it) {
            const cdouble d = chebyshev_eval(dp, t);
            if (d == 0.0) break;
            t -= chebyshev_eval(p, t) / d;
            const double v = std::abs(chebyshev_eval(p, t));
            if (!(v < best)) break;
            best = v;
            best_t = t;
        }
        out.push_back(best_t);
    }
    return out;
}

}  // namespace stokeseig
