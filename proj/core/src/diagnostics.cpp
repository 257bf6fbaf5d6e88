#include "mercerlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mercerlab/errors.hpp"
#include "mercerlab/nystrom.hpp"
#include "mercerlab/spectral.hpp"

namespace mercerlab {
namespace {

constexpr double kJumpThreshold = 0.5;
constexpr double kGrowthPerDecade = 0.5;
constexpr double kRefinementRatio = 1.1;
constexpr double kPsdTolerance = 1e-10;
constexpr std::size_t kDiagonalGridSize = 201;

Verdict continuity_verdict(const ProbeReport& r) {
  const double anchor = r.thresholds.at("anchor");
  const double jump = r.thresholds.at("jump");
  std::vector<double> limits{r.limit};
  const std::pair<double, double>* pos = nullptr;
  const std::pair<double, double>* neg = nullptr;
  for (const auto& p : r.points) {
    if (p.first > anchor && (!pos || p.first < pos->first)) pos = &p;
    if (p.first < anchor && (!neg || p.first > neg->first)) neg = &p;
  }
  if (pos) limits.push_back(pos->second);
  if (neg) limits.push_back(neg->second);
  const auto [lo, hi] = std::minmax_element(limits.begin(), limits.end());
  return *hi - *lo > jump ? Verdict::JumpDetected : Verdict::NoJump;
}

Verdict growth_verdict(const ProbeReport& r) {
  const double min_gain = r.thresholds.at("min_increase_per_decade");
  if (r.points.size() < 2) return Verdict::Bounded;
  for (std::size_t k = 0; k + 1 < r.points.size(); ++k) {
    const double decades = std::log10(r.points[k + 1].first / r.points[k].first);
    const double gain = (r.points[k + 1].second - r.points[k].second) / decades;
    if (!(gain > min_gain)) return Verdict::Bounded;
  }
  return Verdict::UnboundedGrowth;
}

Verdict criterion_verdict(const ProbeReport& r) {
  const double ratio = r.thresholds.at("max_ratio");
  double sup = 0.0;
  for (const auto& p : r.points) sup = std::max(sup, p.second);
  const double refined = r.limit;
  if (!std::isfinite(sup) || !std::isfinite(refined)) return Verdict::CriterionViolated;
  const double lo = std::min(sup, refined);
  const double hi = std::max(sup, refined);
  if (hi == 0.0) return Verdict::CriterionSatisfied;
  if (lo == 0.0) return Verdict::CriterionViolated;
  return hi / lo <= ratio ? Verdict::CriterionSatisfied : Verdict::CriterionViolated;
}

Verdict psd_verdict(const ProbeReport& r) {
  const double tol = r.thresholds.at("relative_tolerance");
  const double scale = r.thresholds.at("max_abs_entry");
  return r.limit >= -tol * scale ? Verdict::Psd : Verdict::Indefinite;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::JumpDetected: return "jump-detected";
    case Verdict::NoJump: return "no-jump";
    case Verdict::Bounded: return "bounded";
    case Verdict::UnboundedGrowth: return "unbounded-growth";
    case Verdict::Psd: return "psd";
    case Verdict::Indefinite: return "indefinite";
    case Verdict::CriterionSatisfied: return "criterion-satisfied";
    case Verdict::CriterionViolated: return "criterion-violated";
  }
  return "unknown";
}

Verdict parse_verdict(std::string_view name) {
  for (Verdict v : {Verdict::JumpDetected, Verdict::NoJump, Verdict::Bounded,
                    Verdict::UnboundedGrowth, Verdict::Psd, Verdict::Indefinite,
                    Verdict::CriterionSatisfied, Verdict::CriterionViolated})
    if (to_string(v) == name) return v;
  throw InvalidArgument("unknown verdict '" + std::string(name) + "'");
}

ProbeReport continuity_probe_product(const KernelSpec& spec, std::size_t depth, std::size_t nodes) {
  if (depth < 1) throw InvalidArgument("continuity probe depth must be at least 1");
  if (const auto* k = std::get_if<PathologicalProduct>(&spec); k && depth > k->n_max)
    throw InvalidArgument("continuity probe depth exceeds the kernel's n_max");
  const Interval iv = interval_of(spec);
  const QuadratureRule rule = build_rule(RuleKind::GaussLegendre, nodes, iv);
  const double anchor = std::clamp(0.0, iv.a(), iv.b());
  const double half = 0.5 * iv.length();

  ProbeReport r;
  r.probe = "continuity";
  for (int side : {+1, -1}) {
    for (std::size_t n = 1; n <= depth; ++n) {
      const double x = anchor + side * std::ldexp(half, -static_cast<int>(n));
      if (!iv.contains(x)) continue;
      r.points.emplace_back(x, product_kernel_eval(spec, x, x, rule));
    }
  }
  r.limit = product_kernel_eval(spec, anchor, anchor, rule);
  r.points.emplace_back(anchor, r.limit);
  r.thresholds = {{"jump", kJumpThreshold}, {"anchor", anchor}};
  r.verdict = continuity_verdict(r);
  return r;
}

ProbeReport diagonal_growth_probe(const KernelSpec& spec, std::span<const std::size_t> schedule) {
  if (schedule.empty()) throw InvalidArgument("diagonal growth probe needs a term schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] == 0) throw InvalidArgument("term counts must be positive");
    if (k && schedule[k] <= schedule[k - 1])
      throw InvalidArgument("term schedule must be strictly increasing");
  }
  const EvalGrid grid = EvalGrid::uniform(interval_of(spec), kDiagonalGridSize);
  ProbeReport r;
  r.probe = "diag-growth";
  for (std::size_t terms : schedule) {
    const KernelSpec truncated = with_terms(spec, terms);
    double sup = -std::numeric_limits<double>::infinity();
    for (double x : grid.points()) sup = std::max(sup, eval(truncated, x, x));
    r.points.emplace_back(static_cast<double>(terms), sup);
  }
  r.limit = r.points.back().second;
  r.thresholds = {{"min_increase_per_decade", kGrowthPerDecade}};
  r.verdict = growth_verdict(r);
  return r;
}

ProbeReport c_criterion_probe(const KernelSpec& spec, const EvalGrid& f,
                              const QuadratureRule& rule) {
  const Interval iv = interval_of(spec);
  for (double x : f.points())
    if (!iv.contains(x)) throw InvalidArgument("probe set lies outside the kernel's interval");
  const QuadratureRule refined = build_rule(RuleKind::GaussLegendre, 2 * rule.size(), iv);
  ProbeReport r;
  r.probe = "c-criterion";
  double refined_sup = 0.0;
  for (double x : f.points()) {
    r.points.emplace_back(x, row_l2_norm(spec, x, rule));
    refined_sup = std::max(refined_sup, row_l2_norm(spec, x, refined));
  }
  r.limit = refined_sup;
  r.thresholds = {{"max_ratio", kRefinementRatio}};
  r.verdict = criterion_verdict(r);
  return r;
}

ProbeReport psd_probe(const KernelSpec& spec, std::span<const double> points) {
  if (points.empty()) throw InvalidArgument("psd probe needs at least one point");
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("psd probe points must be pairwise distinct");

  const std::size_t m = points.size();
  Matrix gram(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) gram(k, l) = eval(spec, points[k], points[l]);
  Matrix sym(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) sym(k, l) = 0.5 * (gram(k, l) + gram(l, k));
  const SymmetricEigen eig = symmetric_eigen(sym);

  ProbeReport r;
  r.probe = "psd";
  for (std::size_t k = 0; k < m; ++k) r.points.emplace_back(points[k], gram(k, k));
  r.limit = eig.values.back();
  r.thresholds = {{"relative_tolerance", kPsdTolerance}, {"max_abs_entry", gram.max_abs()}};
  r.verdict = psd_verdict(r);
  return r;
}

Verdict recompute_verdict(const ProbeReport& report) {
  if (report.probe == "continuity") return continuity_verdict(report);
  if (report.probe == "diag-growth") return growth_verdict(report);
  if (report.probe == "c-criterion") return criterion_verdict(report);
  if (report.probe == "psd") return psd_verdict(report);
  throw InvalidArgument("unknown probe '" + report.probe + "'");
}

nlohmann::json to_json(const ProbeReport& report) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [x, v] : report.points) pts.push_back({x, v});
  return nlohmann::json{{"probe", report.probe},
                        {"points", pts},
                        {"limit", report.limit},
                        {"verdict", std::string(to_string(report.verdict))},
                        {"thresholds", report.thresholds}};
}

ProbeReport probe_report_from_json(const nlohmann::json& j) {
  ProbeReport r;
  r.probe = j.at("probe").get<std::string>();
  for (const auto& p : j.at("points")) r.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  r.limit = j.at("limit").get<double>();
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  r.thresholds = j.at("thresholds").get<std::map<std::string, double>>();
  return r;
}

}  // namespace mercerlab
