#include "mcpiso/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mcpiso::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ParseError(where + ": " + msg);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

double number_field(const json& j, const std::string& key, const std::string& where) {
  return number(field(j, key, where), where + "." + key);
}

// A number or the string "inf".
double extended(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kHalfLine;
    fail(where, "expected a number or \"inf\"");
  }
  return number(j, where);
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t count_field(const json& j, const std::string& key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    fail(where + "." + key, "expected a positive integer");
  return v.get<std::size_t>();
}

json extended_to_json(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

template <class F>
auto wrap_domain(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Density density_from_json(const json& j, const std::string& where) {
  const json& t = field(j, "type", where);
  if (!t.is_string()) fail(where + ".type", "expected a string");
  const std::string type = t.get<std::string>();
  return wrap_domain(where, [&]() -> Density {
    if (type == "constant") return Density(ConstantDensity{number_field(j, "c", where)});
    if (type == "monomial")
      return Density(MonomialDensity{number_field(j, "c", where), number_field(j, "p", where)});
    if (type == "piecewise_monomial") {
      PiecewiseMonomialDensity d;
      d.breakpoints = numbers(field(j, "breakpoints", where), where + ".breakpoints");
      const json& pieces = field(j, "pieces", where);
      if (!pieces.is_array()) fail(where + ".pieces", "expected an array");
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string w = where + ".pieces[" + std::to_string(i) + "]";
        d.pieces.push_back({number_field(pieces[i], "c", w), number_field(pieces[i], "p", w)});
      }
      return Density(std::move(d));
    }
    if (type == "paper_sharp")
      return Density(PaperSharpDensity{number_field(j, "avr", where),
                                       number_field(j, "mass", where),
                                       number_field(j, "N", where)});
    if (type == "tabulated")
      return Density(TabulatedDensity{numbers(field(j, "grid", where), where + ".grid"),
                                      numbers(field(j, "values", where), where + ".values")});
    fail(where + ".type", "unknown density type \"" + type + "\"");
  });
}

json to_json(const Density& h) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantDensity>) {
          return {{"type", "constant"}, {"c", d.c}};
        } else if constexpr (std::is_same_v<T, MonomialDensity>) {
          return {{"type", "monomial"}, {"c", d.c}, {"p", d.p}};
        } else if constexpr (std::is_same_v<T, PiecewiseMonomialDensity>) {
          json pieces = json::array();
          for (const auto& pc : d.pieces) pieces.push_back({{"c", pc.c}, {"p", pc.p}});
          return {{"type", "piecewise_monomial"},
                  {"breakpoints", d.breakpoints},
                  {"pieces", pieces}};
        } else if constexpr (std::is_same_v<T, PaperSharpDensity>) {
          return {{"type", "paper_sharp"}, {"avr", d.avr}, {"mass", d.mass}, {"N", d.n}};
        } else {
          return {{"type", "tabulated"}, {"grid", d.grid}, {"values", d.values}};
        }
      },
      h.family());
}

WeightedInterval space_from_json(const json& j) {
  const double D = extended(field(j, "D", "space"), "space.D");
  Density h = density_from_json(field(j, "density", "space"), "space.density");
  return wrap_domain("space", [&] { return WeightedInterval(D, std::move(h)); });
}

json to_json(const WeightedInterval& X) {
  return {{"D", extended_to_json(X.D())}, {"density", to_json(X.density())}};
}

IntervalUnion set_from_json(const json& j) {
  const json& arr = field(j, "intervals", "set");
  if (!arr.is_array()) fail("set.intervals", "expected an array");
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = "set.intervals[" + std::to_string(i) + "]";
    const auto pair = numbers(arr[i], w);
    if (pair.size() != 2) fail(w, "expected [s, t]");
    parts.push_back({pair[0], pair[1]});
  }
  return wrap_domain("set", [&] { return IntervalUnion(std::move(parts)); });
}

json to_json(const IntervalUnion& E) {
  json arr = json::array();
  for (const auto& iv : E.components()) arr.push_back({iv.lo, iv.hi});
  return {{"intervals", arr}};
}

localization::RadialModel model_from_json(const json& j, const Tolerance& tol) {
  const double theta = number_field(j, "theta", "model");
  Density w = density_from_json(field(j, "weight", "model"), "model.weight");
  const double n = number_field(j, "N", "model");
  const double len =
      j.contains("ray_length") ? extended(j["ray_length"], "model.ray_length") : kHalfLine;
  return wrap_domain("model", [&] {
    return localization::RadialModel(theta, std::move(w), RealDimension(n), len, tol);
  });
}

SearchJob search_job_from_json(const json& j) {
  const std::string where = "config";
  SearchJob job;
  job.n = number_field(j, "N", where);
  job.config.grid_points = count_field(j, "grid_points", where);
  job.config.max_components = count_field(j, "max_components", where);
  job.config.volume_tolerance = number_field(j, "volume_tolerance", where);
  if (j.contains("window")) job.config.window = number(j["window"], where + ".window");
  job.volumes = numbers(field(j, "volumes", where), where + ".volumes");
  if (j.contains("avr")) job.avr = number(j["avr"], where + ".avr");
  wrap_domain(where, [&] {
    job.config.validate();
    return 0;
  });
  return job;
}

}  // namespace mcpiso::io
