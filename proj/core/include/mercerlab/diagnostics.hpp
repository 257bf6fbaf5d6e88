#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mercerlab/kernels.hpp"
#include "mercerlab/quadrature.hpp"

namespace mercerlab {

enum class Verdict {
  JumpDetected,
  NoJump,
  Bounded,
  UnboundedGrowth,
  Psd,
  Indefinite,
  CriterionSatisfied,
  CriterionViolated,
};

std::string_view to_string(Verdict v) noexcept;
Verdict parse_verdict(std::string_view name);

/// Outcome of a probe. The verdict can be recomputed from `points`, `limit`
/// and `thresholds` alone; see recompute_verdict.
struct ProbeReport {
  std::string probe;
  std::vector<std::pair<double, double>> points;
  double limit = 0.0;
  Verdict verdict = Verdict::Bounded;
  std::map<std::string, double> thresholds;
};

/// Diagonal of the product kernel K2(x, x) = int K(x, z)^2 dz along
/// anchor +/- 2^-n (b - a)/2, n = 1..depth, and at the anchor itself. The
/// anchor is the point of the closed interval nearest 0. Sides falling
/// outside the interval are skipped. Verdict is jump-detected when the
/// sequence limits and the anchor value spread by more than 0.5.
///
/// Regular kernels are integrated on a Gauss rule with `nodes` points.
/// Throws InvalidArgument if depth exceeds the pathological kernel's n_max.
ProbeReport continuity_probe_product(const KernelSpec& spec, std::size_t depth,
                                     std::size_t nodes = 200);

/// sup of K_N(x, x) over a 201-point grid for each N in the schedule
/// (strictly increasing). Unbounded growth when every step gains more than
/// 0.5 per decade of N.
ProbeReport diagonal_growth_probe(const KernelSpec& spec, std::span<const std::size_t> schedule);

/// Row norms ||K(x, .)||_2 over F. The refined sup on a Gauss rule with twice
/// the nodes is recorded as the limit; criterion satisfied when both sups are
/// finite and within a factor 1.1 of each other.
ProbeReport c_criterion_probe(const KernelSpec& spec, const EvalGrid& f,
                              const QuadratureRule& rule);

/// Smallest eigenvalue of the Gram matrix K(x_k, x_l) (symmetric part).
/// psd when >= -1e-10 max|entry|. Throws InvalidArgument on duplicate points.
ProbeReport psd_probe(const KernelSpec& spec, std::span<const double> points);

Verdict recompute_verdict(const ProbeReport& report);

nlohmann::json to_json(const ProbeReport& report);
ProbeReport probe_report_from_json(const nlohmann::json& j);

}  // namespace mercerlab
