#include "mercerlab/tabulated.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "mercerlab/errors.hpp"

namespace mercerlab {
namespace {

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string::npos) end = line.size();
    std::size_t b = start, e = end;
    while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
    while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t' || line[e - 1] == '\r')) --e;
    double v = 0.0;
    const auto res = std::from_chars(line.data() + b, line.data() + e, v);
    if (b == e || res.ec != std::errc() || res.ptr != line.data() + e)
      throw InvalidArgument("tabulated CSV: bad number on line " + std::to_string(line_no));
    if (!std::isfinite(v))
      throw InvalidArgument("tabulated CSV: non-finite value on line " + std::to_string(line_no));
    values.push_back(v);
    start = end + 1;
  }
  return values;
}

// Index i with nodes[i] <= x < nodes[i+1], clamped, plus the interpolation fraction.
std::pair<std::size_t, double> locate(std::span<const double> nodes, double x) {
  const std::size_t n = nodes.size();
  if (x <= nodes.front()) return {0, 0.0};
  if (x >= nodes.back()) return {n - 1, 0.0};
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - nodes.begin()) - 1;
  if (nodes[i] == x) return {i, 0.0};
  return {i, (x - nodes[i]) / (nodes[i + 1] - nodes[i])};
}

}  // namespace

TabulatedKernel::TabulatedKernel(QuadratureRule rule, Matrix samples) {
  if (!samples.square() || samples.rows() != rule.size())
    throw InvalidArgument("tabulated kernel matrix must be square and match the rule size");
  for (double v : samples.data())
    if (!std::isfinite(v)) throw InvalidArgument("tabulated kernel has non-finite samples");
  const bool sym = samples.asymmetry() <= 1e-12 * samples.max_abs();
  data_ = std::make_shared<const Data>(Data{std::move(rule), std::move(samples), sym});
}

double TabulatedKernel::eval(double x, double y) const {
  const auto nodes = data_->rule.nodes();
  const auto& a = data_->samples;
  const auto [i, tx] = locate(nodes, x);
  const auto [j, ty] = locate(nodes, y);
  const std::size_t i1 = tx > 0.0 ? i + 1 : i;
  const std::size_t j1 = ty > 0.0 ? j + 1 : j;
  if (tx == 0.0 && ty == 0.0) return a(i, j);
  return (1.0 - tx) * (1.0 - ty) * a(i, j) + tx * (1.0 - ty) * a(i1, j) +
         (1.0 - tx) * ty * a(i, j1) + tx * ty * a(i1, j1);
}

void write_tabulated_csv(std::ostream& os, const QuadratureRule& rule, const Matrix& samples) {
  char buf[32];
  auto write_row = [&](std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", values[i]);
      if (i) os << ',';
      os << buf;
    }
    os << '\n';
  };
  write_row(rule.nodes());
  write_row(rule.weights());
  for (std::size_t i = 0; i < samples.rows(); ++i) write_row(samples.row(i));
}

TabulatedKernel read_tabulated_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_row(line, line_no));
  }
  if (rows.size() < 3) throw InvalidArgument("tabulated CSV needs nodes, weights and matrix rows");
  const std::size_t n = rows[0].size();
  if (rows[1].size() != n) throw InvalidArgument("tabulated CSV: weight count differs from node count");
  if (rows.size() != n + 2) throw InvalidArgument("tabulated CSV: matrix is not square");
  Matrix samples(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i + 2].size() != n) throw InvalidArgument("tabulated CSV: matrix is not square");
    std::copy(rows[i + 2].begin(), rows[i + 2].end(), samples.row(i).begin());
  }
  const auto& nodes = rows[0];
  const auto& weights = rows[1];
  const double len = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double centre = 0.5 * (nodes.front() + nodes.back());
  double a = std::min(centre - 0.5 * len, nodes.front());
  double b = std::max(a + len, nodes.back());
  if (b - a > len * (1.0 + 1e-12))
    throw InvalidArgument("tabulated CSV: nodes do not fit an interval of length sum(weights)");
  QuadratureRule rule(Interval(a, b), nodes, weights);
  return TabulatedKernel(std::move(rule), std::move(samples));
}

}  // namespace mercerlab
