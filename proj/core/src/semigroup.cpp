#include "mercerlab/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mercerlab/errors.hpp"
#include "mercerlab/matrix.hpp"

namespace mercerlab {

HeatSemigroupSpec::HeatSemigroupSpec(Boundary boundary_, double t_, std::size_t modes_)
    : boundary(boundary_), t(t_), modes(modes_) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("heat semigroup time must be positive");
  if (modes < 1) throw InvalidArgument("heat semigroup needs at least one mode");
}

HeatSemigroupSpec::HeatSemigroupSpec(Boundary boundary_, double t_)
    : HeatSemigroupSpec(boundary_, t_, default_modes(t_)) {}

std::size_t default_modes(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("heat semigroup time must be positive");
  const double needed = std::ceil(8.0 / std::sqrt(t));
  return std::max<std::size_t>(100, static_cast<std::size_t>(needed));
}

Interval heat_interval() { return Interval(0.0, std::numbers::pi); }

double heat_eval(const HeatSemigroupSpec& spec, double x, double y) {
  return eval(KernelSpec(spec.kernel()), x, y);
}

double semigroup_check(const HeatSemigroupSpec& spec, const QuadratureRule& rule,
                       const EvalGrid& grid) {
  if (!rule.interval().approx_equal(heat_interval()))
    throw InvalidArgument("semigroup check needs a rule on (0, pi)");
  const KernelSpec kt = spec.kernel();
  const KernelSpec k2t = spec.at_time(2.0 * spec.t).kernel();
  const auto pts = grid.points();
  const auto z = rule.nodes();
  const auto w = rule.weights();
  Matrix rows(pts.size(), rule.size());
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (std::size_t j = 0; j < rule.size(); ++j) rows(p, j) = eval(kt, pts[p], z[j]);
  double worst = 0.0;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto rp = rows.row(p);
    for (std::size_t q = 0; q < pts.size(); ++q) {
      const auto rq = rows.row(q);
      double s = 0.0;
      for (std::size_t j = 0; j < rule.size(); ++j) s += (rp[j] * rq[j]) * w[j];
      worst = std::max(worst, std::abs(eval(k2t, pts[p], pts[q]) - s));
    }
  }
  return worst;
}

GaussianBoundParams gaussian_bound_fit(Boundary boundary, std::span<const double> times, double b,
                                       double omega, const EvalGrid& grid, std::size_t modes) {
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("Gaussian bound needs b > 0");
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw InvalidArgument("Gaussian bound needs omega >= 0");
  if (times.empty()) throw InvalidArgument("Gaussian bound fit needs at least one time");
  const auto pts = grid.points();
  double c = 0.0;
  for (double t : times) {
    const HeatSemigroupSpec spec = modes ? HeatSemigroupSpec(boundary, t, modes)
                                         : HeatSemigroupSpec(boundary, t);
    const KernelSpec k = spec.kernel();
    for (double x : pts)
      for (double y : pts) {
        const double d = x - y;
        const double ratio = std::abs(eval(k, x, y)) * std::sqrt(t) * std::exp(b * d * d / t) *
                             std::exp(-omega * t);
        c = std::max(c, ratio);
      }
  }
  return {b, omega, c};
}

double heat_trace(const HeatSemigroupSpec& spec) {
  double s = spec.boundary == Boundary::Neumann ? 1.0 : 0.0;
  for (std::size_t n = 1; n <= spec.modes; ++n) {
    const double nd = static_cast<double>(n);
    s += std::exp(-nd * nd * spec.t);
  }
  return s;
}

}  // namespace mercerlab
