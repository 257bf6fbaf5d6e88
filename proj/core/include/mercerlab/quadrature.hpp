#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace mercerlab {

/// Closed real interval [a, b] with a < b, both finite.
class Interval {
 public:
  Interval(double a, double b);

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double length() const noexcept { return b_ - a_; }
  [[nodiscard]] double midpoint() const noexcept { return 0.5 * (a_ + b_); }
  [[nodiscard]] bool contains(double x) const noexcept { return x >= a_ && x <= b_; }

  /// Endpoints agree within `rel` of the interval length.
  [[nodiscard]] bool approx_equal(const Interval& other, double rel = 1e-12) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

enum class RuleKind { GaussLegendre, Trapezoid, Midpoint };

RuleKind parse_rule_kind(std::string_view name);
std::string_view to_string(RuleKind kind) noexcept;

/// Nodes and positive weights on an interval. Every integral in the library is
/// a weighted sum over one of these.
class QuadratureRule {
 public:
  /// Validates: nodes strictly increasing and inside the closed interval,
  /// weights positive, sum of weights equal to the interval length within
  /// 1e-12 relative.
  QuadratureRule(Interval interval, std::vector<double> nodes, std::vector<double> weights);

  [[nodiscard]] const Interval& interval() const noexcept { return interval_; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

  /// Same nodes and weights, bit for bit, on approximately the same interval.
  [[nodiscard]] bool same_as(const QuadratureRule& other) const noexcept;

 private:
  Interval interval_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Builds an n-point rule. Gauss-Legendre nodes come from Newton iteration on
/// the three-term Legendre recurrence started at cosine guesses.
QuadratureRule build_rule(RuleKind kind, std::size_t n, const Interval& iv);

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.
void gauss_legendre_reference(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/// sum_i w_i f(x_i). Throws NumericalFailure if f is non-finite at a node.
double integrate(const std::function<double(double)>& f, const QuadratureRule& rule);

/// Evaluation points covering the closed interval, endpoints included.
class EvalGrid {
 public:
  /// Points are sorted, deduplicated, and the interval endpoints added.
  EvalGrid(const Interval& iv, std::vector<double> points);

  /// `count` equispaced points from a to b inclusive (count >= 2).
  static EvalGrid uniform(const Interval& iv, std::size_t count);

  [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] const Interval& interval() const noexcept { return interval_; }

 private:
  Interval interval_;
  std::vector<double> points_;
};

}  // namespace mercerlab
