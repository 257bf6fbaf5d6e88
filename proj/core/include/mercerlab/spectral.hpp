#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "mercerlab/matrix.hpp"
#include "mercerlab/nystrom.hpp"
#include "mercerlab/quadrature.hpp"

namespace mercerlab {

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column n pairs with values[n]
  int sweeps = 0;
};

/// Cyclic-by-rows Jacobi. Stops once the off-diagonal Frobenius norm is at
/// most 1e-12 of the full Frobenius norm; throws NumericalFailure after 100
/// sweeps. Eigenpairs are sorted descending with ties kept in diagonal order.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// Eigen-data of a symmetric discrete operator.
///
/// eigenfunctions(i, n) = e_n(x_i), normalized so that
/// sum_i w_i e_n(x_i) e_m(x_i) = delta_nm.
class SpectralDecomposition {
 public:
  SpectralDecomposition(DiscreteOperator op, std::vector<double> eigenvalues,
                        Matrix eigenfunctions);

  [[nodiscard]] const DiscreteOperator& op() const noexcept { return op_; }
  [[nodiscard]] const QuadratureRule& rule() const noexcept { return op_.rule(); }
  [[nodiscard]] std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  [[nodiscard]] const Matrix& eigenfunctions() const noexcept { return eigenfunctions_; }
  [[nodiscard]] std::size_t size() const noexcept { return eigenvalues_.size(); }
  [[nodiscard]] const KernelSpec& source() const noexcept { return source_; }

  /// 1e-12 * max(max|lambda|, 1). Eigenvalues at or below this count as zero.
  [[nodiscard]] double clip_tolerance() const noexcept { return clip_; }
  [[nodiscard]] bool clipped(std::size_t n) const noexcept { return eigenvalues_[n] <= clip_; }

  /// max |sum_i w_i e_n(x_i) e_m(x_i) - delta_nm|.
  [[nodiscard]] double orthonormality_error() const;

 private:
  DiscreteOperator op_;
  std::vector<double> eigenvalues_;
  Matrix eigenfunctions_;
  KernelSpec source_;
  double clip_;
};

/// Throws InvalidArgument for a nonsymmetric operator.
SpectralDecomposition eigendecompose(const DiscreteOperator& op);

/// e_n(x) = lambda_n^-1 sum_j w_j K(x, x_j) e_n(x_j), for 0-based n.
/// Throws DegenerateEigenvalue if lambda_n is clipped.
double nystrom_extend(const SpectralDecomposition& dec, std::size_t n, double x);

/// Extended eigenfunctions on `points`: result(p, n) = e_n(points[p]) for
/// n < terms; clipped columns are zero.
Matrix extend_all(const SpectralDecomposition& dec, std::span<const double> points,
                  std::size_t terms);

/// sum_{n < terms} lambda_n e_n(x) e_n(y), skipping clipped eigenvalues.
double mercer_reconstruct(const SpectralDecomposition& dec, std::size_t terms, double x, double y);

struct MercerReport {
  std::size_t terms = 0;
  double sup_error = 0.0;  // sup over grid x grid of |K - K_N|
  double diag_tail = 0.0;  // sup_x sum_{n >= terms} lambda_n e_n(x)^2
  double trace_gap = 0.0;  // |sum lambda_n - sum_i w_i K(x_i, x_i)|
  double min_eigenvalue = 0.0;
};

MercerReport mercer_report(const SpectralDecomposition& dec, std::size_t terms,
                           const EvalGrid& grid);

nlohmann::json to_json(const MercerReport& report);

/// Partial sums of K_{T2 T1*} = sum_n u_n (x) v_n with u_n = T2 e_n and
/// v_n = T1 e_n, against the composed operator at the nodes.
struct ProductSeriesReport {
  std::size_t terms = 0;
  double sup_error = 0.0;
};

ProductSeriesReport product_series(const SpectralDecomposition& basis,
                                   const DiscreteOperator& op2, const DiscreteOperator& op1,
                                   std::size_t terms);

/// Kernel samples sum_n lambda_n^alpha e_n(x_i) e_n(x_j), clipped
/// eigenvalues dropped. Throws NotPositive if the smallest eigenvalue is
/// below -clip_tolerance.
DiscreteOperator fractional_power(const SpectralDecomposition& dec, double alpha);

/// sum over eigenvalues of max(lambda, 0)^alpha; the trace of the
/// fractional power.
double fractional_trace(std::span<const double> eigenvalues, double alpha);

/// sup over grid x of sum_{n >= first} c_n(x)^2 with
/// c_n(x) = sum_j w_j K(x, x_j) e_n(x_j). `first` is 0-based.
double coefficient_tail(const SpectralDecomposition& dec, std::size_t first, const EvalGrid& grid);

/// "index,eigenvalue" header then one row per eigenvalue, 1-based index.
void write_eigenvalue_csv(std::ostream& os, std::span<const double> eigenvalues);

}  // namespace mercerlab
