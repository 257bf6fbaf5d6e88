#pragma once

#include <cstddef>
#include <span>

#include "mercerlab/kernels.hpp"
#include "mercerlab/quadrature.hpp"

namespace mercerlab {

/// Heat semigroup of the Dirichlet or Neumann Laplacian on (0, pi).
///
/// Eigen-data: Dirichlet e_n = sqrt(2/pi) sin(nx), n >= 1; Neumann adds
/// e_0 = 1/sqrt(pi) and uses cosines. Eigenvalue of e^{t Delta} on e_n is
/// e^{-n^2 t}.
struct HeatSemigroupSpec {
  HeatSemigroupSpec(Boundary boundary, double t, std::size_t modes);

  /// Uses default_modes(t).
  HeatSemigroupSpec(Boundary boundary, double t);

  Boundary boundary;
  double t;
  std::size_t modes;

  [[nodiscard]] HeatKernel kernel() const { return HeatKernel(boundary, t, modes); }
  [[nodiscard]] HeatSemigroupSpec at_time(double time) const {
    return HeatSemigroupSpec(boundary, time, modes);
  }
};

/// max(100, ceil(8 / sqrt(t))): the dropped tail stays below e^-64.
std::size_t default_modes(double t);

/// Interval (0, pi).
Interval heat_interval();

struct GaussianBoundParams {
  double b = 0.0;
  double omega = 0.0;
  double c = 0.0;
};

/// K_t(x, y); throws InvalidArgument outside [0, pi].
double heat_eval(const HeatSemigroupSpec& spec, double x, double y);

/// sup over grid x grid of |K_{2t}(x, y) - sum_j w_j K_t(x, z_j) K_t(z_j, y)|.
double semigroup_check(const HeatSemigroupSpec& spec, const QuadratureRule& rule,
                       const EvalGrid& grid);

/// Smallest c with |K_t(x, y)| <= c t^{-1/2} exp(-b |x-y|^2 / t) exp(omega t)
/// over all grid pairs and listed times. modes == 0 picks default_modes per t.
GaussianBoundParams gaussian_bound_fit(Boundary boundary, std::span<const double> times, double b,
                                       double omega, const EvalGrid& grid, std::size_t modes = 0);

/// sum of e^{-n^2 t} over the spec's modes, plus 1 for the Neumann constant mode.
double heat_trace(const HeatSemigroupSpec& spec);

}  // namespace mercerlab
