#include "mercerlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "mercerlab/errors.hpp"

namespace mercerlab {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgument("interval endpoints must be finite");
  if (!(a < b)) throw InvalidArgument("interval requires a < b");
}

bool Interval::approx_equal(const Interval& other, double rel) const noexcept {
  const double tol = rel * std::max(length(), other.length());
  return std::abs(a_ - other.a_) <= tol && std::abs(b_ - other.b_) <= tol;
}

RuleKind parse_rule_kind(std::string_view name) {
  if (name == "gauss" || name == "gauss-legendre") return RuleKind::GaussLegendre;
  if (name == "trapezoid") return RuleKind::Trapezoid;
  if (name == "midpoint") return RuleKind::Midpoint;
  throw InvalidArgument("unknown rule kind '" + std::string(name) + "'");
}

std::string_view to_string(RuleKind kind) noexcept {
  switch (kind) {
    case RuleKind::GaussLegendre: return "gauss-legendre";
    case RuleKind::Trapezoid: return "trapezoid";
    case RuleKind::Midpoint: return "midpoint";
  }
  return "unknown";
}

QuadratureRule::QuadratureRule(Interval interval, std::vector<double> nodes,
                               std::vector<double> weights)
    : interval_(interval), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty()) throw InvalidArgument("quadrature rule has no nodes");
  if (nodes_.size() != weights_.size())
    throw InvalidArgument("quadrature rule: node and weight counts differ");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !interval_.contains(nodes_[i]))
      throw InvalidArgument("quadrature node outside its interval");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw InvalidArgument("quadrature nodes must be strictly increasing");
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw InvalidArgument("quadrature weights must be positive");
  }
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(sum - interval_.length()) > 1e-12 * interval_.length())
    throw InvalidArgument("quadrature weights do not sum to the interval length");
}

bool QuadratureRule::same_as(const QuadratureRule& other) const noexcept {
  return interval_.approx_equal(other.interval_) && nodes_ == other.nodes_ &&
         weights_ == other.weights_;
}

void gauss_legendre_reference(std::size_t n, std::vector<double>& nodes,
                              std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // i-th largest root
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd + 1.0) * x * p1 - kd * p0) / (kd + 1.0);
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-14) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalFailure("Gauss-Legendre Newton iteration did not converge");
    // refresh derivative at the converged root
    {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd + 1.0) * x * p1 - kd * p0) / (kd + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - i] = x;
    nodes[i] = -x;
    weights[n - 1 - i] = w;
    weights[i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule build_rule(RuleKind kind, std::size_t n, const Interval& iv) {
  if (n < 2) throw InvalidArgument("quadrature rule needs n >= 2");
  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  const double a = iv.a();
  const double len = iv.length();
  switch (kind) {
    case RuleKind::GaussLegendre: {
      gauss_legendre_reference(n, nodes, weights);
      const double half = 0.5 * len;
      const double mid = iv.midpoint();
      for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
      }
      break;
    }
    case RuleKind::Trapezoid: {
      const double h = len / static_cast<double>(n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = a + h * static_cast<double>(i);
        weights[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
      }
      nodes[n - 1] = iv.b();
      break;
    }
    case RuleKind::Midpoint: {
      const double h = len / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = a + h * (static_cast<double>(i) + 0.5);
        weights[i] = h;
      }
      break;
    }
  }
  return QuadratureRule(iv, std::move(nodes), std::move(weights));
}

double integrate(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double sum = 0.0;
  const auto x = rule.nodes();
  const auto w = rule.weights();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(x[i]);
    if (!std::isfinite(v)) throw NumericalFailure("integrand is not finite at a quadrature node");
    sum += w[i] * v;
  }
  return sum;
}

EvalGrid::EvalGrid(const Interval& iv, std::vector<double> points)
    : interval_(iv), points_(std::move(points)) {
  for (double p : points_)
    if (!std::isfinite(p) || !iv.contains(p))
      throw InvalidArgument("evaluation point outside the closed interval");
  points_.push_back(iv.a());
  points_.push_back(iv.b());
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

EvalGrid EvalGrid::uniform(const Interval& iv, std::size_t count) {
  if (count < 2) throw InvalidArgument("evaluation grid needs at least 2 points");
  std::vector<double> pts(count);
  const double h = iv.length() / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = iv.a() + h * static_cast<double>(i);
  pts.back() = iv.b();
  return EvalGrid(iv, std::move(pts));
}

}  // namespace mercerlab
