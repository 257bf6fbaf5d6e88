#include "mercerlab/nystrom.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "mercerlab/errors.hpp"

namespace mercerlab {
namespace {

void require_same_rule(const DiscreteOperator& a, const DiscreteOperator& b) {
  if (!a.rule().same_as(b.rule())) throw InvalidArgument("operators live on different rules");
}

}  // namespace

DiscreteOperator::DiscreteOperator(QuadratureRule rule, Matrix samples, bool symmetric,
                                   std::optional<KernelSpec> source)
    : rule_(std::move(rule)),
      samples_(std::move(samples)),
      symmetric_(symmetric),
      source_(std::move(source)) {
  if (!samples_.square() || samples_.rows() != rule_.size())
    throw InvalidArgument("operator matrix must be square and match the rule size");
  for (double v : samples_.data())
    if (!std::isfinite(v)) throw NumericalFailure("operator matrix has non-finite entries");
  if (symmetric_ && samples_.asymmetry() > 1e-12 * samples_.max_abs())
    throw InvalidArgument("operator flagged symmetric but its matrix is not");
}

KernelSpec DiscreteOperator::kernel() const {
  if (source_) return *source_;
  return TabulatedKernel(rule_, samples_);
}

DiscreteOperator discretize(const KernelSpec& spec, const QuadratureRule& rule) {
  if (!rule.interval().approx_equal(interval_of(spec)))
    throw InvalidArgument("rule interval does not match kernel interval");
  if (const auto* k = std::get_if<PathologicalProduct>(&spec)) {
    if (static_cast<double>(rule.size()) < std::pow(10.0, static_cast<double>(k->n_max)))
      throw InvalidArgument(
          "pathological kernel cannot be discretized on fewer than 10^n_max nodes; use the "
          "localized product and row-norm evaluations instead");
  }
  const std::size_t n = rule.size();
  const auto x = rule.nodes();
  const bool sym = is_symmetric(spec);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = sym ? i : 0; j < n; ++j) {
      const double v = eval(spec, x[i], x[j]);
      a(i, j) = v;
      if (sym) a(j, i) = v;
    }
  }
  return DiscreteOperator(rule, std::move(a), sym, spec);
}

std::vector<double> apply(const DiscreteOperator& op, std::span<const double> u) {
  const std::size_t n = op.size();
  if (u.size() != n) throw InvalidArgument("apply: vector length does not match node count");
  const auto w = op.rule().weights();
  std::vector<double> wu(n);
  for (std::size_t j = 0; j < n; ++j) wu[j] = w[j] * u[j];
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = op.samples().row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * wu[j];
    out[i] = s;
  }
  return out;
}

DiscreteOperator compose(const DiscreteOperator& op2, const DiscreteOperator& op1) {
  require_same_rule(op2, op1);
  const std::size_t n = op2.size();
  const auto w = op2.rule().weights();
  const Matrix& left = op2.samples();
  const Matrix right_t = op1.samples().transposed();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto li = left.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const auto rk = right_t.row(k);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += (li[j] * rk[j]) * w[j];
      out(i, k) = s;
    }
  }
  const bool sym = op2.symmetric() && op1.symmetric() && op2.samples() == op1.samples();
  return DiscreteOperator(op2.rule(), std::move(out), sym);
}

DiscreteOperator adjoint(const DiscreteOperator& op) {
  std::optional<KernelSpec> source;
  if (op.symmetric()) source = op.source();
  return DiscreteOperator(op.rule(), op.samples().transposed(), op.symmetric(), std::move(source));
}

DiscreteOperator scaled(const DiscreteOperator& op, double factor) {
  Matrix a = op.samples();
  for (double& v : a.data()) v *= factor;
  return DiscreteOperator(op.rule(), std::move(a), op.symmetric());
}

double hs_norm(const DiscreteOperator& op) {
  const auto w = op.rule().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < op.size(); ++i) {
    const auto row = op.samples().row(i);
    double r = 0.0;
    for (std::size_t j = 0; j < op.size(); ++j) r += w[j] * row[j] * row[j];
    s += w[i] * r;
  }
  return std::sqrt(s);
}

double trace_diag(const DiscreteOperator& op) {
  const auto w = op.rule().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < op.size(); ++i) s += w[i] * op.samples()(i, i);
  return s;
}

double row_l2_norm(const KernelSpec& spec, double x, const QuadratureRule& rule) {
  if (needs_localized_quadrature(spec)) return std::sqrt(product_kernel_eval(spec, x, x, rule));
  if (!rule.interval().approx_equal(interval_of(spec)))
    throw InvalidArgument("rule interval does not match kernel interval");
  const auto y = rule.nodes();
  const auto w = rule.weights();
  double s = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double k = eval(spec, x, y[j]);
    s += w[j] * k * k;
  }
  return std::sqrt(s);
}

Matrix symmetrized_matrix(const DiscreteOperator& op) {
  const std::size_t n = op.size();
  const auto w = op.rule().weights();
  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i) sw[i] = std::sqrt(w[i]);
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = sw[i] * op.samples()(i, j) * sw[j];
  if (op.symmetric()) {
    // (sw_i a_ij) sw_j and (sw_j a_ji) sw_i can differ in the last bit
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) b(j, i) = b(i, j);
  }
  return b;
}

void write_operator_csv(std::ostream& os, const DiscreteOperator& op) {
  write_tabulated_csv(os, op.rule(), op.samples());
}

DiscreteOperator read_operator_csv(std::istream& is) {
  TabulatedKernel k = read_tabulated_csv(is);
  return DiscreteOperator(k.rule(), k.samples(), k.symmetric(), KernelSpec(k));
}

}  // namespace mercerlab
