#include "mercerlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "mercerlab/errors.hpp"

namespace mercerlab {

SpectralDecomposition::SpectralDecomposition(DiscreteOperator op, std::vector<double> eigenvalues,
                                             Matrix eigenfunctions)
    : op_(std::move(op)),
      eigenvalues_(std::move(eigenvalues)),
      eigenfunctions_(std::move(eigenfunctions)),
      source_(op_.kernel()) {
  if (eigenvalues_.size() != op_.size() || eigenfunctions_.rows() != op_.size() ||
      eigenfunctions_.cols() != eigenvalues_.size())
    throw InvalidArgument("spectral decomposition dimensions are inconsistent");
  double largest = 0.0;
  for (double l : eigenvalues_) largest = std::max(largest, std::abs(l));
  clip_ = 1e-12 * std::max(largest, 1.0);
}

double SpectralDecomposition::orthonormality_error() const {
  const std::size_t n = size();
  const auto w = rule().weights();
  const Matrix et = eigenfunctions_.transposed();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const auto ea = et.row(a);
    for (std::size_t b = a; b < n; ++b) {
      const auto eb = et.row(b);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += w[i] * ea[i] * eb[i];
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

SpectralDecomposition eigendecompose(const DiscreteOperator& op) {
  if (!op.symmetric()) throw InvalidArgument("eigendecompose needs a symmetric operator");
  SymmetricEigen eig = symmetric_eigen(symmetrized_matrix(op));
  const std::size_t n = op.size();
  const auto w = op.rule().weights();
  Matrix e(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double inv_sqrt_w = 1.0 / std::sqrt(w[i]);
    for (std::size_t k = 0; k < n; ++k) e(i, k) = eig.vectors(i, k) * inv_sqrt_w;
  }
  return SpectralDecomposition(op, std::move(eig.values), std::move(e));
}

Matrix extend_all(const SpectralDecomposition& dec, std::span<const double> points,
                  std::size_t terms) {
  if (terms > dec.size()) throw InvalidArgument("more terms requested than eigenpairs");
  const std::size_t n = dec.size();
  const auto x = dec.rule().nodes();
  const auto w = dec.rule().weights();
  const auto lambda = dec.eigenvalues();
  const Matrix et = dec.eigenfunctions().transposed();
  Matrix out(points.size(), terms);
  std::vector<double> wk(n);
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t j = 0; j < n; ++j) wk[j] = w[j] * eval(dec.source(), points[p], x[j]);
    for (std::size_t k = 0; k < terms; ++k) {
      if (dec.clipped(k)) continue;
      const auto ek = et.row(k);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += wk[j] * ek[j];
      out(p, k) = s / lambda[k];
    }
  }
  return out;
}

double nystrom_extend(const SpectralDecomposition& dec, std::size_t n, double x) {
  if (n >= dec.size()) throw InvalidArgument("eigenfunction index out of range");
  if (dec.clipped(n))
    throw DegenerateEigenvalue("eigenvalue is at or below the clipping tolerance");
  const double pt[1] = {x};
  const Matrix row = extend_all(dec, pt, n + 1);
  return row(0, n);
}

double mercer_reconstruct(const SpectralDecomposition& dec, std::size_t terms, double x, double y) {
  if (terms == 0) return 0.0;
  const double pts[2] = {x, y};
  const Matrix ext = extend_all(dec, pts, terms);
  const auto lambda = dec.eigenvalues();
  double s = 0.0;
  for (std::size_t k = 0; k < terms; ++k)
    if (!dec.clipped(k)) s += lambda[k] * ext(0, k) * ext(1, k);
  return s;
}

MercerReport mercer_report(const SpectralDecomposition& dec, std::size_t terms,
                           const EvalGrid& grid) {
  const std::size_t n = dec.size();
  if (terms > n) throw InvalidArgument("more terms requested than eigenpairs");
  const auto pts = grid.points();
  const std::size_t g = pts.size();
  const Matrix ext = extend_all(dec, pts, n);
  const auto lambda = dec.eigenvalues();

  MercerReport r;
  r.terms = terms;
  for (std::size_t p = 0; p < g; ++p) {
    for (std::size_t q = 0; q < g; ++q) {
      double s = 0.0;
      for (std::size_t k = 0; k < terms; ++k)
        if (!dec.clipped(k)) s += lambda[k] * ext(p, k) * ext(q, k);
      r.sup_error = std::max(r.sup_error, std::abs(eval(dec.source(), pts[p], pts[q]) - s));
    }
    double tail = 0.0;
    for (std::size_t k = terms; k < n; ++k)
      if (!dec.clipped(k)) tail += lambda[k] * ext(p, k) * ext(p, k);
    r.diag_tail = std::max(r.diag_tail, tail);
  }
  double sum = 0.0;
  for (double l : lambda) sum += l;
  r.trace_gap = std::abs(sum - trace_diag(dec.op()));
  r.min_eigenvalue = n ? lambda[n - 1] : 0.0;
  return r;
}

nlohmann::json to_json(const MercerReport& report) {
  return nlohmann::json{{"terms", report.terms},
                        {"sup_error", report.sup_error},
                        {"diag_tail", report.diag_tail},
                        {"trace_gap", report.trace_gap},
                        {"min_eigenvalue", report.min_eigenvalue}};
}

ProductSeriesReport product_series(const SpectralDecomposition& basis,
                                   const DiscreteOperator& op2, const DiscreteOperator& op1,
                                   std::size_t terms) {
  if (terms > basis.size()) throw InvalidArgument("more terms requested than basis functions");
  if (!basis.rule().same_as(op2.rule()) || !basis.rule().same_as(op1.rule()))
    throw InvalidArgument("basis and operators live on different rules");
  const std::size_t n = basis.size();
  const Matrix target = compose(op2, adjoint(op1)).samples();
  Matrix u(terms, n);
  Matrix v(terms, n);
  std::vector<double> e(n);
  for (std::size_t k = 0; k < terms; ++k) {
    for (std::size_t i = 0; i < n; ++i) e[i] = basis.eigenfunctions()(i, k);
    const auto uk = mercerlab::apply(op2, e);
    const auto vk = mercerlab::apply(op1, e);
    std::copy(uk.begin(), uk.end(), u.row(k).begin());
    std::copy(vk.begin(), vk.end(), v.row(k).begin());
  }
  ProductSeriesReport r;
  r.terms = terms;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < terms; ++k) s += u(k, i) * v(k, j);
      r.sup_error = std::max(r.sup_error, std::abs(target(i, j) - s));
    }
  return r;
}

DiscreteOperator fractional_power(const SpectralDecomposition& dec, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("fractional power exponent must be positive");
  const std::size_t n = dec.size();
  const auto lambda = dec.eigenvalues();
  if (n && lambda[n - 1] < -dec.clip_tolerance())
    throw NotPositive("operator has a negative eigenvalue; fractional power undefined");
  std::vector<double> powered(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    if (!dec.clipped(k)) powered[k] = std::pow(lambda[k], alpha);
  const Matrix et = dec.eigenfunctions().transposed();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (powered[k] != 0.0) s += powered[k] * et(k, i) * et(k, j);
      out(i, j) = s;
      out(j, i) = s;
    }
  return DiscreteOperator(dec.rule(), std::move(out), true);
}

double fractional_trace(std::span<const double> eigenvalues, double alpha) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l > 0.0) s += std::pow(l, alpha);
  return s;
}

double coefficient_tail(const SpectralDecomposition& dec, std::size_t first, const EvalGrid& grid) {
  const std::size_t n = dec.size();
  if (first > n) throw InvalidArgument("coefficient tail start beyond dimension");
  const auto x = dec.rule().nodes();
  const auto w = dec.rule().weights();
  const Matrix et = dec.eigenfunctions().transposed();
  std::vector<double> wk(n);
  double worst = 0.0;
  for (double p : grid.points()) {
    for (std::size_t j = 0; j < n; ++j) wk[j] = w[j] * eval(dec.source(), p, x[j]);
    double tail = 0.0;
    for (std::size_t k = first; k < n; ++k) {
      const auto ek = et.row(k);
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) c += wk[j] * ek[j];
      tail += c * c;
    }
    worst = std::max(worst, tail);
  }
  return worst;
}

void write_eigenvalue_csv(std::ostream& os, std::span<const double> eigenvalues) {
  char buf[32];
  os << "index,eigenvalue\n";
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", eigenvalues[k]);
    os << (k + 1) << ',' << buf << '\n';
  }
}

}  // namespace mercerlab
