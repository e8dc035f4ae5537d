#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcpiso/density.hpp"
#include "mcpiso/errors.hpp"
#include "mcpiso/localization.hpp"
#include "mcpiso/search.hpp"
#include "mcpiso/space.hpp"

namespace mcpiso::io {

using nlohmann::json;

// Malformed input document; the message names the offending field or the
// line and column of a syntax error.
class ParseError : public Error {
 public:
  using Error::Error;
};

json read_json_file(const std::string& path);
json parse_json(const std::string& text, const std::string& origin = "<input>");

// {"type":"constant","c":..} | {"type":"monomial","c":..,"p":..}
// | {"type":"piecewise_monomial","breakpoints":[..],"pieces":[{"c":..,"p":..},..]}
// | {"type":"paper_sharp","avr":..,"mass":..,"N":..}
// | {"type":"tabulated","grid":[..],"values":[..]}
Density density_from_json(const json& j, const std::string& where = "density");
json to_json(const Density& h);

// {"D": number | "inf", "density": <density>}
WeightedInterval space_from_json(const json& j);
json to_json(const WeightedInterval& X);

// {"intervals": [[s, t], ...]}
IntervalUnion set_from_json(const json& j);
json to_json(const IntervalUnion& E);

// {"theta":.., "weight": <density>, "N":.., "ray_length": number | "inf"}
localization::RadialModel model_from_json(const json& j,
                                          const Tolerance& tol = kDefaultTolerance);

// {"N":.., "grid_points":.., "max_components":.., "volume_tolerance":..,
//  "volumes":[..], "window":.. (optional), "avr":.. (optional)}
struct SearchJob {
  search::SearchConfig config;
  double n;
  std::vector<double> volumes;
  std::optional<double> avr;
};
SearchJob search_job_from_json(const json& j);

}  // namespace mcpiso::io
