#include "mercerlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mercerlab/errors.hpp"

namespace mercerlab {
namespace {

constexpr std::size_t kMaxPathologicalDepth = 15;
constexpr std::size_t kLocalGaussOrder = 64;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct GaussTable {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussTable& local_gauss() {
  static const GaussTable table = [] {
    GaussTable t;
    gauss_legendre_reference(kLocalGaussOrder, t.nodes, t.weights);
    return t;
  }();
  return table;
}

double ipow(double base, std::size_t n) {
  double r = 1.0;
  for (std::size_t i = 0; i < n; ++i) r *= base;
  return r;
}

// |x - centre| <= radius, with a 1e-12 relative slack on the radius so that
// decimal endpoints such as 0.26 = 2^-2 + 10^-2 are classified as inside.
bool in_block(double x, double centre, double radius) {
  return std::abs(x - centre) <= radius * (1.0 + 1e-12);
}

// n with x in [3^-n - 9^-n, 3^-n + 9^-n]: the z-support blocks.
std::optional<std::size_t> z_block(double x, std::size_t n_max) {
  for (std::size_t n = 1; n <= n_max; ++n)
    if (in_block(x, ipow(1.0 / 3.0, n), ipow(1.0 / 9.0, n))) return n;
  return std::nullopt;
}

double pathological_plain(std::size_t n_max, double x, double z) {
  const auto n = pathological_block(x, n_max);
  if (!n) return 0.0;
  const double xs = ipow(10.0, *n) * (x - ipow(0.5, *n));
  const double zs = ipow(9.0, *n) * (z - ipow(1.0 / 3.0, *n));
  return ipow(3.0, *n) * bump_tensor(xs, zs);
}

double pathological_eval(const PathologicalProduct& k, double x, double z) {
  if (!k.symmetrized) return pathological_plain(k.n_max, x, z);
  if (z < x) std::swap(x, z);
  return pathological_plain(k.n_max, x, z) + pathological_plain(k.n_max, z, x);
}

struct Support {
  double centre;
  double radius;
};

// Intervals outside of which z -> K(x, z) vanishes.
void row_supports(const PathologicalProduct& k, double x, std::vector<Support>& out) {
  if (const auto n = pathological_block(x, k.n_max))
    out.push_back({ipow(1.0 / 3.0, *n), ipow(1.0 / 9.0, *n)});
  if (k.symmetrized)
    if (const auto m = z_block(x, k.n_max)) out.push_back({ipow(0.5, *m), ipow(0.1, *m)});
}

double localized_product(const PathologicalProduct& k, double x, double y) {
  std::vector<Support> supports;
  row_supports(k, x, supports);
  row_supports(k, y, supports);
  if (supports.empty()) return 0.0;

  std::vector<double> breaks;
  for (const auto& s : supports) {
    breaks.push_back(s.centre - s.radius);
    breaks.push_back(s.centre - 0.5 * s.radius);
    breaks.push_back(s.centre + 0.5 * s.radius);
    breaks.push_back(s.centre + s.radius);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto& g = local_gauss();
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p];
    const double hi = breaks[p + 1];
    const double mid = 0.5 * (lo + hi);
    const bool covered = std::any_of(supports.begin(), supports.end(), [&](const Support& s) {
      return std::abs(mid - s.centre) < s.radius;
    });
    if (!covered) continue;
    const double half = 0.5 * (hi - lo);
    double piece = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double z = mid + half * g.nodes[i];
      piece += g.weights[i] * pathological_eval(k, x, z) * pathological_eval(k, y, z);
    }
    total += half * piece;
  }
  return total;
}

double legendre_kernel(std::size_t terms, double x, double y) {
  if (terms == 0) return 0.0;
  double px0 = 1.0, px1 = x;
  double py0 = 1.0, py1 = y;
  double sum = 1.5 * x * y;  // n = 1
  for (std::size_t n = 1; n < terms; ++n) {
    const double nd = static_cast<double>(n);
    const double px2 = ((2.0 * nd + 1.0) * x * px1 - nd * px0) / (nd + 1.0);
    const double py2 = ((2.0 * nd + 1.0) * y * py1 - nd * py0) / (nd + 1.0);
    px0 = px1;
    px1 = px2;
    py0 = py1;
    py1 = py2;
    const double m = nd + 1.0;
    sum += (2.0 * m + 1.0) / (2.0 * m * m) * px1 * py1;
  }
  return sum;
}

double slow_trace_kernel(std::size_t terms, double x, double y) {
  const double d = x - y;
  double sum = 0.0;
  for (std::size_t n = 1; n <= terms; ++n)
    sum += SlowTraceDecay::eigenvalue(n) * std::cos(static_cast<double>(n) * d);
  return sum / std::numbers::pi;
}

void check_point(const Interval& iv, double x, double y) {
  if (!iv.contains(x) || !iv.contains(y))
    throw InvalidArgument("kernel evaluated outside its closed interval");
}

}  // namespace

std::string_view to_string(Boundary b) noexcept {
  return b == Boundary::Dirichlet ? "dirichlet" : "neumann";
}

double bump(double s) noexcept {
  s = std::abs(s);
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const double u = 2.0 * s - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double bump_tensor(double s, double t) noexcept { return bump(s) * bump(t); }

double bump_l2_mass() {
  static const double mass = [] {
    std::vector<double> nodes, weights;
    gauss_legendre_reference(256, nodes, weights);
    const double pieces[4] = {-1.0, -0.5, 0.5, 1.0};
    double total = 0.0;
    for (int p = 0; p < 3; ++p) {
      const double mid = 0.5 * (pieces[p] + pieces[p + 1]);
      const double half = 0.5 * (pieces[p + 1] - pieces[p]);
      double piece = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double b = bump(mid + half * nodes[i]);
        piece += weights[i] * b * b;
      }
      total += half * piece;
    }
    return total;
  }();
  return mass;
}

PathologicalProduct::PathologicalProduct(std::size_t n_max_, bool symmetrized_)
    : n_max(n_max_), symmetrized(symmetrized_) {
  if (n_max < 1 || n_max > kMaxPathologicalDepth)
    throw InvalidArgument("pathological kernel depth must be in [1, 15]");
}

LegendreDecay::LegendreDecay(std::size_t terms_) : terms(terms_) {
  if (terms < 1) throw InvalidArgument("legendre kernel needs at least one term");
}

SlowTraceDecay::SlowTraceDecay(std::size_t terms_) : terms(terms_) {
  if (terms < 1) throw InvalidArgument("slow-trace kernel needs at least one term");
}

double SlowTraceDecay::eigenvalue(std::size_t n) {
  const double nd = static_cast<double>(n);
  const double l = std::log(nd + 1.0);
  return 1.0 / (nd * l * l);
}

HeatKernel::HeatKernel(Boundary boundary_, double t_, std::size_t modes_)
    : boundary(boundary_), t(t_), modes(modes_) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("heat kernel time must be positive");
  if (modes < 1) throw InvalidArgument("heat kernel needs at least one mode");
}

Interval interval_of(const KernelSpec& spec) {
  return std::visit(
      overloaded{
          [](const BrownianBridge&) { return Interval(0.0, 1.0); },
          [](const PathologicalProduct&) { return Interval(-1.0, 1.0); },
          [](const LegendreDecay&) { return Interval(-1.0, 1.0); },
          [](const SlowTraceDecay&) { return Interval(0.0, 2.0 * std::numbers::pi); },
          [](const HeatKernel&) { return Interval(0.0, std::numbers::pi); },
          [](const TabulatedKernel& k) { return k.rule().interval(); },
      },
      spec);
}

bool is_symmetric(const KernelSpec& spec) {
  return std::visit(overloaded{
                        [](const PathologicalProduct& k) { return k.symmetrized; },
                        [](const TabulatedKernel& k) { return k.symmetric(); },
                        [](const auto&) { return true; },
                    },
                    spec);
}

std::string describe(const KernelSpec& spec) {
  return std::visit(
      overloaded{
          [](const BrownianBridge&) { return std::string("brownian-bridge"); },
          [](const PathologicalProduct& k) {
            return "pathological(n_max=" + std::to_string(k.n_max) +
                   (k.symmetrized ? ",symmetrized)" : ")");
          },
          [](const LegendreDecay& k) { return "legendre(terms=" + std::to_string(k.terms) + ")"; },
          [](const SlowTraceDecay& k) {
            return "slow-trace(terms=" + std::to_string(k.terms) + ")";
          },
          [](const HeatKernel& k) {
            return "heat(" + std::string(to_string(k.boundary)) + ",modes=" +
                   std::to_string(k.modes) + ")";
          },
          [](const TabulatedKernel& k) {
            return "tabulated(n=" + std::to_string(k.rule().size()) + ")";
          },
      },
      spec);
}

double eval(const KernelSpec& spec, double x, double y) {
  check_point(interval_of(spec), x, y);
  return std::visit(
      overloaded{
          [&](const BrownianBridge&) {
            const double lo = std::min(x, y);
            const double hi = std::max(x, y);
            return lo - lo * hi;
          },
          [&](const PathologicalProduct& k) { return pathological_eval(k, x, y); },
          [&](const LegendreDecay& k) {
            return legendre_kernel(k.terms, std::min(x, y), std::max(x, y));
          },
          [&](const SlowTraceDecay& k) {
            return slow_trace_kernel(k.terms, std::min(x, y), std::max(x, y));
          },
          [&](const HeatKernel& k) {
            return heat_series(k.boundary, k.t, k.modes, std::min(x, y), std::max(x, y));
          },
          [&](const TabulatedKernel& k) { return k.eval(x, y); },
      },
      spec);
}

double legendre_poly(std::size_t n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double p2 = ((2.0 * kd + 1.0) * x * p1 - kd * p0) / (kd + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::optional<std::size_t> pathological_block(double x, std::size_t n_max) {
  for (std::size_t n = 1; n <= n_max; ++n)
    if (in_block(x, ipow(0.5, n), ipow(0.1, n))) return n;
  return std::nullopt;
}

double heat_series(Boundary boundary, double t, std::size_t modes, double x, double y) {
  double sum = 0.0;
  for (std::size_t n = 1; n <= modes; ++n) {
    const double nd = static_cast<double>(n);
    const double decay = std::exp(-nd * nd * t);
    if (decay == 0.0) break;
    if (boundary == Boundary::Dirichlet)
      sum += decay * std::sin(nd * x) * std::sin(nd * y);
    else
      sum += decay * std::cos(nd * x) * std::cos(nd * y);
  }
  sum *= 2.0 / std::numbers::pi;
  if (boundary == Boundary::Neumann) sum += 1.0 / std::numbers::pi;
  return sum;
}

bool needs_localized_quadrature(const KernelSpec& spec) noexcept {
  return std::holds_alternative<PathologicalProduct>(spec);
}

double product_kernel_eval(const KernelSpec& spec, double x, double y,
                           const QuadratureRule& rule) {
  check_point(interval_of(spec), x, y);
  if (const auto* k = std::get_if<PathologicalProduct>(&spec)) return localized_product(*k, x, y);
  if (!rule.interval().approx_equal(interval_of(spec)))
    throw InvalidArgument("rule interval does not match kernel interval");
  const auto z = rule.nodes();
  const auto w = rule.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) sum += w[j] * eval(spec, x, z[j]) * eval(spec, y, z[j]);
  return sum;
}

std::optional<std::size_t> truncation(const KernelSpec& spec) noexcept {
  return std::visit(overloaded{
                        [](const PathologicalProduct& k) -> std::optional<std::size_t> {
                          return k.n_max;
                        },
                        [](const LegendreDecay& k) -> std::optional<std::size_t> { return k.terms; },
                        [](const SlowTraceDecay& k) -> std::optional<std::size_t> {
                          return k.terms;
                        },
                        [](const HeatKernel& k) -> std::optional<std::size_t> { return k.modes; },
                        [](const auto&) -> std::optional<std::size_t> { return std::nullopt; },
                    },
                    spec);
}

KernelSpec with_terms(const KernelSpec& spec, std::size_t terms) {
  return std::visit(overloaded{
                        [&](const PathologicalProduct& k) -> KernelSpec {
                          return PathologicalProduct(terms, k.symmetrized);
                        },
                        [&](const LegendreDecay&) -> KernelSpec { return LegendreDecay(terms); },
                        [&](const SlowTraceDecay&) -> KernelSpec { return SlowTraceDecay(terms); },
                        [&](const HeatKernel& k) -> KernelSpec {
                          return HeatKernel(k.boundary, k.t, terms);
                        },
                        [&](const auto& k) -> KernelSpec { return k; },
                    },
                    spec);
}

}  // namespace mercerlab
