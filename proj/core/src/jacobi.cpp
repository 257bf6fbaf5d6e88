#include <algorithm>
#include <cmath>
#include <numeric>

#include "mercerlab/errors.hpp"
#include "mercerlab/spectral.hpp"

namespace mercerlab {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& input) {
  if (!input.square()) throw InvalidArgument("eigensolver needs a square matrix");
  const std::size_t n = input.rows();
  Matrix a = input;
  // Make the working copy exactly symmetric from the upper triangle.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = a(i, j);

  Matrix vt(n, n);  // rows are eigenvectors
  for (std::size_t i = 0; i < n; ++i) vt(i, i) = 1.0;

  const double norm = frobenius_norm(a);
  int sweeps = 0;
  for (;;) {
    const double off = off_diagonal_norm(a);
    if (off == 0.0 || off <= kOffDiagonalTolerance * norm) break;
    if (sweeps == kMaxSweeps)
      throw NumericalFailure("Jacobi eigensolver did not converge in 100 sweeps");
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double np = c * arp - s * arq;
          const double nq = s * arp + c * arq;
          a(r, p) = np;
          a(p, r) = np;
          a(r, q) = nq;
          a(q, r) = nq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t r = 0; r < n; ++r) {
          const double x = vp[r];
          const double y = vq[r];
          vp[r] = c * x - s * y;
          vq[r] = s * x + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweeps;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    const auto v = vt.row(order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v[r];
  }
  return out;
}

}  // namespace mercerlab
