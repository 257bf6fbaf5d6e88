#include "mercerlab/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace mercerlab {
namespace {

void emit(const nlohmann::json& v, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (v.type()) {
    case value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {  // object_t is a std::map: keys sorted
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        emit(item, out);
      }
      out += '}';
      break;
    }
    case value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        emit(v[i], out);
      }
      out += ']';
      break;
    }
    case value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      break;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string canonical_json(const nlohmann::json& value) {
  std::string out;
  emit(value, out);
  return out;
}

}  // namespace mercerlab
