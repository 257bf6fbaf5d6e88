#include "cli/kernel_parse.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "mercerlab/errors.hpp"
#include "mercerlab/semigroup.hpp"

namespace mercerlab::cli {
namespace {

using Items = std::map<std::string, std::optional<std::string>>;

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw InvalidArgument("kernel parameter '" + key + "' is not a number: " + text);
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw InvalidArgument("kernel parameter '" + key + "' is not a count: " + text);
  return v;
}

bool parse_flag(const std::string& key, const std::optional<std::string>& value) {
  if (!value || *value == "true" || *value == "1") return true;
  if (*value == "false" || *value == "0") return false;
  throw InvalidArgument("kernel flag '" + key + "' expects true/false");
}

void reject_unknown(const std::string& name, const Items& items,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, value] : items)
    if (!allowed.count(key))
      throw InvalidArgument("unknown key '" + key + "' for kernel '" + name + "'");
}

const std::string& required(const std::string& name, const Items& items, const std::string& key) {
  const auto it = items.find(key);
  if (it == items.end() || !it->second)
    throw InvalidArgument("kernel '" + name + "' needs " + key + "=<value>");
  return *it->second;
}

KernelSpec load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open tabulated kernel file '" + path + "'");
  return read_tabulated_csv(in);
}

KernelSpec build(const std::string& name, const Items& items) {
  if (name == "brownian-bridge") {
    reject_unknown(name, items, {});
    return BrownianBridge{};
  }
  if (name == "pathological") {
    reject_unknown(name, items, {"n_max", "symmetrized"});
    std::size_t n_max = 6;
    bool sym = false;
    if (items.count("n_max")) n_max = parse_count("n_max", required(name, items, "n_max"));
    if (auto it = items.find("symmetrized"); it != items.end()) sym = parse_flag("symmetrized", it->second);
    return PathologicalProduct(n_max, sym);
  }
  if (name == "legendre" || name == "slow-trace") {
    reject_unknown(name, items, {"terms"});
    std::size_t terms = 100;
    if (items.count("terms")) terms = parse_count("terms", required(name, items, "terms"));
    if (name == "legendre") return LegendreDecay(terms);
    return SlowTraceDecay(terms);
  }
  if (name == "heat") {
    reject_unknown(name, items, {"dirichlet", "neumann", "boundary", "t", "modes"});
    std::optional<Boundary> boundary;
    auto set_boundary = [&](Boundary b) {
      if (boundary && *boundary != b) throw InvalidArgument("heat kernel boundary given twice");
      boundary = b;
    };
    if (items.count("dirichlet")) set_boundary(Boundary::Dirichlet);
    if (items.count("neumann")) set_boundary(Boundary::Neumann);
    if (items.count("boundary")) {
      const std::string& b = required(name, items, "boundary");
      if (b == "dirichlet") set_boundary(Boundary::Dirichlet);
      else if (b == "neumann") set_boundary(Boundary::Neumann);
      else throw InvalidArgument("heat boundary must be dirichlet or neumann");
    }
    if (!boundary) throw InvalidArgument("heat kernel needs a boundary (dirichlet or neumann)");
    const double t = parse_real("t", required(name, items, "t"));
    if (!(t > 0.0)) throw InvalidArgument("heat kernel time must be positive");
    std::size_t modes = default_modes(t);
    if (items.count("modes")) modes = parse_count("modes", required(name, items, "modes"));
    return HeatKernel(*boundary, t, modes);
  }
  if (name == "tabulated") {
    reject_unknown(name, items, {"path"});
    return load_csv(required(name, items, "path"));
  }
  throw InvalidArgument("unknown kernel '" + name + "'");
}

KernelSpec from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open kernel file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("kernel file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("kernel") || !j["kernel"].is_string())
    throw InvalidArgument("kernel file needs an object with a \"kernel\" name");
  const std::string name = j["kernel"].get<std::string>();
  Items items;
  for (const auto& [key, value] : j.items()) {
    if (key == "kernel") continue;
    if (value.is_string()) items[key] = value.get<std::string>();
    else if (value.is_boolean()) items[key] = value.get<bool>() ? "true" : "false";
    else if (value.is_number_unsigned() || value.is_number_integer()) items[key] = value.dump();
    else if (value.is_number_float()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
      items[key] = buf;
    } else {
      throw InvalidArgument("kernel file key '" + key + "' has an unsupported value");
    }
  }
  return build(name, items);
}

}  // namespace

KernelSpec parse_kernel(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty kernel specification");
  if (ends_with(text, ".json")) return from_json_file(std::string(text));
  if (ends_with(text, ".csv") && text.find(':') == std::string_view::npos)
    return load_csv(std::string(text));

  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  Items items;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      if (item.empty()) throw InvalidArgument("empty item in kernel specification");
      const auto eq = item.find('=');
      std::string key(item.substr(0, eq));
      std::optional<std::string> value;
      if (eq != std::string_view::npos) value = std::string(item.substr(eq + 1));
      if (items.count(key)) throw InvalidArgument("kernel key '" + key + "' given twice");
      items.emplace(std::move(key), std::move(value));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return build(name, items);
}

}  // namespace mercerlab::cli
