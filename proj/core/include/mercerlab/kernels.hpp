#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "mercerlab/quadrature.hpp"
#include "mercerlab/tabulated.hpp"

namespace mercerlab {

enum class Boundary { Dirichlet, Neumann };

std::string_view to_string(Boundary b) noexcept;

// Fixed compactly supported bump: beta(s) = 1 on |s| <= 1/2, smooth decay to 0
// at |s| = 1. tau(s, t) = beta(s) * beta(t).
double bump(double s) noexcept;
double bump_tensor(double s, double t) noexcept;
/// c_beta = integral of beta(u)^2 over [-1, 1]. Computed once, then cached.
double bump_l2_mass();

/// K(x, y) = min(x, y) - x y on (0, 1).
struct BrownianBridge {};

/// K(x, z) = sum_{n <= n_max} 3^n tau(10^n (x - 2^-n), 9^n (z - 3^-n)) on (-1, 1).
///
/// Not symmetric. With `symmetrized` set the kernel is K(x, z) + K(z, x).
/// Bump widths shrink like 10^-n, so integrals against this kernel are done
/// on the support blocks directly instead of on a global rule.
struct PathologicalProduct {
  explicit PathologicalProduct(std::size_t n_max = 6, bool symmetrized = false);
  std::size_t n_max;
  bool symmetrized;
};

/// K(x, y) = sum_{n=1}^{N} n^-2 (2n+1)/2 P_n(x) P_n(y) on (-1, 1).
struct LegendreDecay {
  explicit LegendreDecay(std::size_t terms);
  std::size_t terms;
};

/// K(x, y) = (1/pi) sum_{n=1}^{N} lambda_n cos(n (x - y)) on (0, 2 pi) with
/// lambda_n = 1 / (n ln^2(n + 1)). Each lambda_n is an eigenvalue of
/// multiplicity two (cos and sin modes).
struct SlowTraceDecay {
  explicit SlowTraceDecay(std::size_t terms);
  std::size_t terms;

  static double eigenvalue(std::size_t n);
};

/// Heat kernel of the Dirichlet or Neumann Laplacian on (0, pi), truncated
/// to `modes` nonconstant modes.
struct HeatKernel {
  HeatKernel(Boundary boundary, double t, std::size_t modes);
  Boundary boundary;
  double t;
  std::size_t modes;
};

using KernelSpec = std::variant<BrownianBridge, PathologicalProduct, LegendreDecay,
                                SlowTraceDecay, HeatKernel, TabulatedKernel>;

[[nodiscard]] Interval interval_of(const KernelSpec& spec);
[[nodiscard]] bool is_symmetric(const KernelSpec& spec);
[[nodiscard]] std::string describe(const KernelSpec& spec);

/// K(x, y). Symmetric variants evaluate in canonical (min, max) order, so
/// eval(x, y) == eval(y, x) bit for bit.
/// Throws InvalidArgument if x or y lies outside the closed interval.
[[nodiscard]] double eval(const KernelSpec& spec, double x, double y);

/// Legendre polynomial by the three-term recurrence.
[[nodiscard]] double legendre_poly(std::size_t n, double x);

/// The unique n <= n_max with |x - 2^-n| <= 10^-n, if any.
[[nodiscard]] std::optional<std::size_t> pathological_block(double x, std::size_t n_max);

/// Heat series (2/pi) sum e^{-n^2 t} sin(nx) sin(ny), or the Neumann cosine
/// series plus the constant mode 1/pi. No interval check.
[[nodiscard]] double heat_series(Boundary boundary, double t, std::size_t modes, double x,
                                 double y);

/// K2(x, y) = integral of K(x, z) K(y, z) dz.
///
/// Uses `rule` for regular kernels. For PathologicalProduct the rule is
/// ignored and the integral is taken over the z-support blocks of x and y,
/// split at the bump breakpoints.
[[nodiscard]] double product_kernel_eval(const KernelSpec& spec, double x, double y,
                                         const QuadratureRule& rule);

/// True for kernels whose z-integrals must be localized rather than
/// computed on a global rule.
[[nodiscard]] bool needs_localized_quadrature(const KernelSpec& spec) noexcept;

/// Truncation parameter (terms, modes or n_max), if the variant has one.
[[nodiscard]] std::optional<std::size_t> truncation(const KernelSpec& spec) noexcept;

/// Copy of `spec` with its truncation parameter replaced. Variants without
/// one are returned unchanged.
[[nodiscard]] KernelSpec with_terms(const KernelSpec& spec, std::size_t terms);

}  // namespace mercerlab
