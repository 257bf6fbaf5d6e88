#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cli/kernel_parse.hpp"
#include "mercerlab/diagnostics.hpp"
#include "mercerlab/errors.hpp"
#include "mercerlab/json_io.hpp"
#include "mercerlab/nystrom.hpp"
#include "mercerlab/semigroup.hpp"
#include "mercerlab/spectral.hpp"

namespace mercerlab::cli {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + fmt(row[i]);
    s += '\n';
  }
  return s;
}

QuadratureRule make_rule(const RunConfig& c, const KernelSpec& spec) {
  return build_rule(c.rule, c.nodes, interval_of(spec));
}

DiscreteOperator discretize_for(const RunConfig& c, const KernelSpec& spec) {
  return discretize(spec, make_rule(c, spec));
}

std::string run_decompose(const RunConfig& c) {
  const KernelSpec spec = parse_kernel(c.kernels.at(0));
  if (!is_symmetric(spec)) throw InvalidArgument("decompose needs a symmetric kernel");
  const SpectralDecomposition dec = eigendecompose(discretize_for(c, spec));
  const auto all = dec.eigenvalues();
  const std::size_t count = c.top ? std::min(*c.top, all.size()) : all.size();
  const auto values = all.first(count);
  if (c.format == OutputFormat::Json) {
    nlohmann::json j{{"eigenvalues", std::vector<double>(values.begin(), values.end())}};
    return canonical_json(j) + "\n";
  }
  std::ostringstream os;
  write_eigenvalue_csv(os, values);
  return os.str();
}

std::string run_mercer(const RunConfig& c) {
  const KernelSpec spec = parse_kernel(c.kernels.at(0));
  if (!is_symmetric(spec)) throw InvalidArgument("mercer needs a symmetric kernel");
  const SpectralDecomposition dec = eigendecompose(discretize_for(c, spec));
  const std::size_t terms = c.terms.value_or(dec.size());
  if (terms > dec.size()) throw InvalidArgument("--terms exceeds the number of nodes");
  const MercerReport r = mercer_report(dec, terms, EvalGrid::uniform(interval_of(spec), c.grid));
  if (c.format == OutputFormat::Json) return canonical_json(to_json(r)) + "\n";
  return csv_table({"terms", "sup_error", "diag_tail", "trace_gap", "min_eigenvalue"},
                   {{static_cast<double>(r.terms), r.sup_error, r.diag_tail, r.trace_gap,
                     r.min_eigenvalue}});
}

std::string run_probe(const RunConfig& c) {
  const KernelSpec spec = parse_kernel(c.kernels.at(0));
  ProbeReport r;
  if (c.probe_kind == "continuity") {
    r = continuity_probe_product(spec, c.depth, c.nodes);
  } else if (c.probe_kind == "diag-growth") {
    r = diagonal_growth_probe(spec, c.schedule);
  } else if (c.probe_kind == "c-criterion") {
    const Interval iv = interval_of(spec);
    const EvalGrid f = c.points.empty() ? EvalGrid::uniform(iv, c.grid) : EvalGrid(iv, c.points);
    r = c_criterion_probe(spec, f, make_rule(c, spec));
  } else if (c.probe_kind == "psd") {
    if (c.points.empty()) throw InvalidArgument("psd probe needs --points");
    r = psd_probe(spec, c.points);
  } else {
    throw InvalidArgument("unknown probe '" + c.probe_kind + "'");
  }
  if (c.format == OutputFormat::Json) return canonical_json(to_json(r)) + "\n";
  std::vector<std::vector<double>> rows;
  for (const auto& [x, v] : r.points) rows.push_back({x, v});
  return csv_table({"x", "value"}, rows);
}

std::string run_compose(const RunConfig& c) {
  std::vector<DiscreteOperator> ops;
  std::optional<QuadratureRule> rule;
  for (std::size_t k = 0; k < c.kernels.size(); ++k) {
    const KernelSpec spec = parse_kernel(c.kernels[k]);
    if (!rule) rule = make_rule(c, spec);
    DiscreteOperator op = discretize(spec, *rule);
    if (k == 0 && c.alpha) op = fractional_power(eigendecompose(op), *c.alpha);
    if (c.adjoint[k]) op = adjoint(op);
    ops.push_back(std::move(op));
  }
  DiscreteOperator result = ops.front();
  for (std::size_t k = 1; k < ops.size(); ++k) result = compose(result, ops[k]);
  if (c.format == OutputFormat::Json) {
    nlohmann::json samples = nlohmann::json::array();
    for (std::size_t i = 0; i < result.size(); ++i) {
      const auto row = result.samples().row(i);
      samples.push_back(std::vector<double>(row.begin(), row.end()));
    }
    const auto x = result.rule().nodes();
    const auto w = result.rule().weights();
    nlohmann::json j{{"nodes", std::vector<double>(x.begin(), x.end())},
                     {"weights", std::vector<double>(w.begin(), w.end())},
                     {"samples", samples}};
    return canonical_json(j) + "\n";
  }
  std::ostringstream os;
  write_operator_csv(os, result);
  return os.str();
}

std::string run_semigroup(const RunConfig& c) {
  const KernelSpec spec = parse_kernel(c.kernels.at(0));
  const auto* heat = std::get_if<HeatKernel>(&spec);
  if (!heat) throw InvalidArgument("semigroup needs a heat kernel");
  const HeatSemigroupSpec sg(heat->boundary, heat->t, heat->modes);
  const Interval iv = heat_interval();
  const EvalGrid grid = EvalGrid::uniform(iv, c.grid);
  const double residual = semigroup_check(sg, build_rule(c.rule, c.nodes, iv), grid);
  const double trace = heat_trace(sg);
  const GaussianBoundParams fit =
      gaussian_bound_fit(sg.boundary, c.times, c.b, c.omega, grid, sg.modes);
  if (c.format == OutputFormat::Json) {
    nlohmann::json j{{"semigroup_residual", residual}, {"trace", trace}, {"gaussian_c", fit.c}};
    return canonical_json(j) + "\n";
  }
  return csv_table({"semigroup_residual", "trace", "gaussian_c"}, {{residual, trace, fit.c}});
}

void validate(const RunConfig& c) {
  if (c.nodes < 2) throw InvalidArgument("--nodes must be at least 2");
  if (c.grid < 2) throw InvalidArgument("--grid must be at least 2");
  if (c.kernels.empty()) throw InvalidArgument("--kernel is required");
  if (c.command == "compose" && c.adjoint.size() != c.kernels.size())
    throw InvalidArgument("one adjoint flag per kernel");
  if (c.alpha && !(*c.alpha > 0.0)) throw InvalidArgument("--power must be positive");
  for (double t : c.times)
    if (!(t > 0.0)) throw InvalidArgument("--times entries must be positive");
  if (!(c.b > 0.0)) throw InvalidArgument("--b must be positive");
  if (!(c.omega >= 0.0)) throw InvalidArgument("--omega must be nonnegative");
}

}  // namespace

std::string execute(const RunConfig& config) {
  validate(config);
  if (config.command == "decompose") return run_decompose(config);
  if (config.command == "mercer") return run_mercer(config);
  if (config.command == "probe") return run_probe(config);
  if (config.command == "compose") return run_compose(config);
  if (config.command == "semigroup") return run_semigroup(config);
  throw InvalidArgument("unknown command '" + config.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string kernel, kernel2, kernel3, rule = "gauss", format;
  bool adj1 = false, adj2 = false, adj3 = false;

  CLI::App app{"Numerical laboratory for integral operators on an interval"};
  app.name("mercerlab");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--kernel", kernel, "Kernel spec (inline, .json or .csv)")->required();
    sub->add_option("--rule", rule, "Quadrature rule")
        ->check(CLI::IsMember({"gauss", "gauss-legendre", "trapezoid", "midpoint"}));
    sub->add_option("--nodes", cfg.nodes, "Quadrature node count");
    sub->add_option("--grid", cfg.grid, "Evaluation grid size");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
  };

  auto* decompose = app.add_subcommand("decompose", "Eigenvalues of the Nystrom operator");
  add_common(decompose);
  decompose->add_option("--top", cfg.top, "Number of leading eigenvalues");

  auto* mercer = app.add_subcommand("mercer", "Mercer reconstruction report");
  add_common(mercer);
  mercer->add_option("--terms", cfg.terms, "Terms in the truncated expansion");

  auto* probe = app.add_subcommand("probe", "Run a diagnostic probe");
  probe->add_option("kind", cfg.probe_kind, "Probe type")
      ->required()
      ->check(CLI::IsMember({"continuity", "diag-growth", "c-criterion", "psd"}));
  add_common(probe);
  probe->add_option("--depth", cfg.depth, "Sequence depth for the continuity probe");
  probe->add_option("--schedule", cfg.schedule, "Term counts for diag-growth")->delimiter(',');
  probe->add_option("--points", cfg.points, "Points for psd or c-criterion")->delimiter(',');

  auto* composecmd = app.add_subcommand("compose", "Compose discretized operators");
  add_common(composecmd);
  composecmd->add_option("--kernel2", kernel2, "Right operand");
  composecmd->add_option("--kernel3", kernel3, "Third operand");
  composecmd->add_flag("--adjoint1", adj1, "Use the adjoint of the first operand");
  composecmd->add_flag("--adjoint2", adj2, "Use the adjoint of the second operand");
  composecmd->add_flag("--adjoint3", adj3, "Use the adjoint of the third operand");
  composecmd->add_option("--power", cfg.alpha, "Fractional power applied to the first operand");

  auto* semigroup = app.add_subcommand("semigroup", "Heat semigroup checks");
  add_common(semigroup);
  semigroup->add_option("--times", cfg.times, "Times for the Gaussian bound fit")->delimiter(',');
  semigroup->add_option("--b", cfg.b, "Gaussian exponent b");
  semigroup->add_option("--omega", cfg.omega, "Exponential growth omega");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "mercerlab: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.rule = parse_rule_kind(rule);
    cfg.kernels.push_back(kernel);
    cfg.adjoint.push_back(adj1);
    if (!kernel2.empty()) {
      cfg.kernels.push_back(kernel2);
      cfg.adjoint.push_back(adj2);
    }
    if (!kernel3.empty()) {
      if (kernel2.empty()) throw InvalidArgument("--kernel3 needs --kernel2");
      cfg.kernels.push_back(kernel3);
      cfg.adjoint.push_back(adj3);
    }
    const bool csv_default = cfg.command == "decompose" || cfg.command == "compose";
    if (format.empty()) cfg.format = csv_default ? OutputFormat::Csv : OutputFormat::Json;
    else cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

    const std::string text = execute(cfg);
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw InvalidArgument("cannot open output file '" + cfg.out + "'");
      file << text;
    }
    return kExitOk;
  } catch (const NumericalFailure& e) {
    err << "mercerlab: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "mercerlab: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "mercerlab: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "mercerlab: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("mercerlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mercerlab::cli
