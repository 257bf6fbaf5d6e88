#pragma once

// Reference computations used by the tests. None of these go through the
// library's quadrature, eigensolver or kernel code paths.

#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// det(A - lambda I) by full permutation expansion (n <= 7).
double char_poly(const std::vector<std::vector<double>>& a, double lambda);

/// All real roots of det(A - lambda I) for a small symmetric A with simple
/// eigenvalues: dense sign-change scan over the Gershgorin interval, then
/// bisection. Sorted descending.
std::vector<double> char_poly_roots(const std::vector<std::vector<double>>& a);

/// Composite Simpson on [a, b] with `panels` (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels);

/// 1 / (k^2 pi^2), k >= 1.
double brownian_bridge_eigenvalue(std::size_t k);

/// sum_{n=1}^{N} e^{-n^2 t}
double heat_partial_trace(double t, std::size_t modes);

/// sum_{n=1}^{N} (2n+1) / (2 n^2): Legendre kernel diagonal at x = 1.
double legendre_diagonal_at_one(std::size_t terms);

/// sum_{n=1}^{N} (2n+1) / (2 n^4): squared row norm of the Legendre kernel at x = 1.
double legendre_row_norm_sq_at_one(std::size_t terms);

/// sum_{n=1}^{N} (1 / (n ln^2(n+1)))^alpha
double slow_trace_partial_sum(std::size_t terms, double alpha);

/// The bump written out independently: 1 on |s| <= 1/2,
/// exp(1 - 1/(1 - (2|s|-1)^2)) on 1/2 < |s| < 1, 0 beyond.
double bump(double s);

/// c_beta = integral of bump^2 over [-1, 1] by Simpson on each smooth piece.
double bump_l2_mass();

}  // namespace oracle
