#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mercerlab/kernels.hpp"
#include "mercerlab/quadrature.hpp"

namespace mercerlab::cli {

enum class OutputFormat { Csv, Json };

/// Everything a command needs, validated before any computation starts.
struct RunConfig {
  std::string command;
  std::string probe_kind;  // probe only
  std::vector<std::string> kernels;
  RuleKind rule = RuleKind::GaussLegendre;
  std::size_t nodes = 200;
  std::size_t grid = 101;
  std::optional<std::size_t> top;
  std::optional<std::size_t> terms;
  std::optional<double> alpha;
  std::size_t depth = 6;
  std::vector<std::size_t> schedule{100, 1000};
  std::vector<double> points;
  std::vector<double> times{0.1, 0.5, 1.0};
  double b = 0.125;
  double omega = 0.0;
  std::vector<bool> adjoint;  // one per kernel, compose only
  OutputFormat format = OutputFormat::Json;
  std::string out;  // empty: stdout
};

/// Exit codes: 0 success, 1 invalid configuration or argument, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Parses argv and runs one subcommand. Report output goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration and returns the report text.
std::string execute(const RunConfig& config);

}  // namespace mercerlab::cli
