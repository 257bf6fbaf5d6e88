#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mercerlab/kernels.hpp"
#include "mercerlab/matrix.hpp"
#include "mercerlab/quadrature.hpp"

namespace mercerlab {

/// A kernel sampled on a quadrature rule: samples(i, j) = K(x_i, x_j).
///
/// Row i is the row function k_x at x = x_i. The operator acts as
/// (Tu)_i = sum_j w_j K(x_i, x_j) u_j.
class DiscreteOperator {
 public:
  /// Validates finiteness and size. A symmetric flag requires
  /// max|A - A^T| <= 1e-12 max|A|.
  DiscreteOperator(QuadratureRule rule, Matrix samples, bool symmetric,
                   std::optional<KernelSpec> source = std::nullopt);

  [[nodiscard]] const QuadratureRule& rule() const noexcept { return rule_; }
  [[nodiscard]] const Matrix& samples() const noexcept { return samples_; }
  [[nodiscard]] bool symmetric() const noexcept { return symmetric_; }
  [[nodiscard]] std::size_t size() const noexcept { return rule_.size(); }

  /// Kernel the samples came from, if any. Used for off-grid evaluation.
  [[nodiscard]] const std::optional<KernelSpec>& source() const noexcept { return source_; }

  /// Source kernel if present, otherwise the samples as a tabulated kernel.
  [[nodiscard]] KernelSpec kernel() const;

 private:
  QuadratureRule rule_;
  Matrix samples_;
  bool symmetric_;
  std::optional<KernelSpec> source_;
};

/// Samples `spec` on the rule. PathologicalProduct is refused when the rule
/// has fewer than 10^n_max nodes, since a coarser global rule cannot see its
/// bumps.
DiscreteOperator discretize(const KernelSpec& spec, const QuadratureRule& rule);

std::vector<double> apply(const DiscreteOperator& op, std::span<const double> u);

/// samples(i, k) = sum_j w_j K2(x_i, z_j) K1(z_j, x_k) on the shared rule.
/// Each term is formed as (K2 * K1) * w_j and summed in ascending j, so
/// adjoint(compose(A, B)) == compose(adjoint(B), adjoint(A)) exactly.
DiscreteOperator compose(const DiscreteOperator& op2, const DiscreteOperator& op1);

/// Transposed kernel; rule unchanged.
DiscreteOperator adjoint(const DiscreteOperator& op);

DiscreteOperator scaled(const DiscreteOperator& op, double factor);

/// sqrt(sum_ij w_i w_j K(x_i, x_j)^2).
double hs_norm(const DiscreteOperator& op);

/// sum_i w_i K(x_i, x_i).
double trace_diag(const DiscreteOperator& op);

/// sqrt(sum_j w_j K(x, y_j)^2); x may be an endpoint. Localized for the
/// pathological kernel.
double row_l2_norm(const KernelSpec& spec, double x, const QuadratureRule& rule);

/// B(i, j) = sqrt(w_i) K(x_i, x_j) sqrt(w_j).
Matrix symmetrized_matrix(const DiscreteOperator& op);

/// Same layout as the tabulated kernel CSV.
void write_operator_csv(std::ostream& os, const DiscreteOperator& op);
DiscreteOperator read_operator_csv(std::istream& is);

}  // namespace mercerlab
