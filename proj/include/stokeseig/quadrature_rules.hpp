#pragma once

/// @file quadrature_rules.hpp
/// @brief Fixed one-dimensional rules shared by geometry and quadrature.

#include <array>
#include <vector>

namespace stokeseig {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton on the three-term recurrence).
Rule gauss_legendre(int n);

/// The 16-point rule used for panels; computed once.
const Rule& gl16();

/// 20-point rule on [0, 1] exact for p(x) + q(x) log(x), deg p, q <= 9.
const Rule& log_rule();

/// Values of the 16 Lagrange basis polynomials on the gl16 nodes at u.
std::array<double, 16> lagrange16(double u);

/// Derivatives of the 16 Lagrange basis polynomials at u.
std::array<double, 16> lagrange16_derivative(double u);

}  // namespace stokeseig
