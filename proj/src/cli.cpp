#include "mcpiso/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <variant>

#include "mcpiso/density.hpp"
#include "mcpiso/errors.hpp"
#include "mcpiso/io.hpp"
#include "mcpiso/localization.hpp"
#include "mcpiso/profile.hpp"
#include "mcpiso/search.hpp"
#include "mcpiso/space.hpp"

namespace mcpiso::cli {

using io::json;

std::string format_number(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

std::vector<double> parse_sweep(const std::string& spec, bool log_spaced) {
  auto to_double = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw io::ParseError("sweep \"" + spec + "\": bad number \"" + s + "\"");
    }
    if (pos != s.size())
      throw io::ParseError("sweep \"" + spec + "\": bad number \"" + s + "\"");
    return v;
  };
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) return {to_double(spec)};
  const auto c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw io::ParseError("sweep \"" + spec + "\": expected a:b:n");
  const double a = to_double(spec.substr(0, c1));
  const double b = to_double(spec.substr(c1 + 1, c2 - c1 - 1));
  const double nd = to_double(spec.substr(c2 + 1));
  if (!(nd >= 1.0) || nd != std::floor(nd) || nd > 1e6)
    throw io::ParseError("sweep \"" + spec + "\": n must be a positive integer");
  const auto n = static_cast<std::size_t>(nd);
  if (log_spaced && !(a > 0.0 && b > 0.0))
    throw io::ParseError("sweep \"" + spec + "\": log spacing needs positive ends");
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    if (i + 1 == n && n > 1)
      out.push_back(b);
    else
      out.push_back(log_spaced ? a * std::pow(b / a, t) : a + (b - a) * t);
  }
  return out;
}

namespace {

enum class Format { csv, json };

// Table writer shared by every subcommand.
class Report {
 public:
  Report(std::ostream& out, Format fmt, int precision)
      : out_(out), fmt_(fmt), precision_(precision) {}

  std::string num(double x) const { return format_number(x, precision_); }

  // Numbers rounded to the output precision, so JSON and CSV agree.
  json jnum(double x) const {
    if (!std::isfinite(x)) return format_number(x, precision_);
    return std::strtod(num(x).c_str(), nullptr);
  }

  using Cell = std::variant<double, std::string, json>;

  void table(const std::vector<std::string>& header,
             const std::vector<std::vector<Cell>>& rows, bool single_object) {
    if (fmt_ == Format::csv) {
      for (std::size_t i = 0; i < header.size(); ++i)
        out_ << (i ? "," : "") << header[i];
      out_ << '\n';
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out_ << (i ? "," : "") << csv_cell(row[i]);
        out_ << '\n';
      }
      return;
    }
    json arr = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[header[i]] = json_cell(row[i]);
      arr.push_back(std::move(obj));
    }
    out_ << (single_object && arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
  }

 private:
  std::string csv_cell(const Cell& c) const {
    if (const auto* d = std::get_if<double>(&c)) return num(*d);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    const std::string text = std::get<json>(c).dump();
    std::string quoted = "\"";
    for (char ch : text) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }

  json json_cell(const Cell& c) const {
    if (const auto* d = std::get_if<double>(&c)) return jnum(*d);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return std::get<json>(c);
  }

  std::ostream& out_;
  Format fmt_;
  int precision_;
};

json rounded_set(const Report& rep, const IntervalUnion& E) {
  json arr = json::array();
  for (const auto& iv : E.components()) arr.push_back({rep.jnum(iv.lo), rep.jnum(iv.hi)});
  return arr;
}

Tolerance tolerance_from_env() {
  Tolerance tol = kDefaultTolerance;
  if (const char* env = std::getenv("MCP_ISO_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
      throw io::ParseError(std::string("MCP_ISO_TOL: expected a positive number, got \"") +
                           env + "\"");
    tol.abs_tol = v;
  }
  return tol;
}

void witness_cells(const Verdict& v, std::vector<Report::Cell>& row) {
  if (v.witness) {
    row.insert(row.end(), {v.witness->x0, v.witness->x1, to_string(v.witness->side),
                           v.witness->lhs, v.witness->rhs});
  } else {
    row.insert(row.end(), {std::string(), std::string(), std::string(), std::string(),
                           std::string()});
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"MCP(0,N) isoperimetric profiles, bounds and checks", "mcp_iso"};
  app.require_subcommand(1);

  std::string format = "csv";
  int precision = 12;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--precision", precision, "Significant digits")->check(CLI::Range(1, 17));

  double n = 0, D = 0, avr_value = 0, mass = 0, v_min = 0, v_max = 0.1, r = 0;
  double n_lo = 1.000001, n_hi = 64.0, r_max = 1e6;
  std::size_t points = 8, resolution = 512;
  std::string v_spec, R_spec, space_file, config_file, model_file;
  bool log_spaced = false;

  auto* profile_cmd = app.add_subcommand("profile", "Model profile I_{0,N,D}(v)");
  profile_cmd->add_option("--N", n)->required();
  profile_cmd->add_option("--D", D)->required();
  profile_cmd->add_option("--v", v_spec, "Volume fraction or sweep a:b:n")->required();
  profile_cmd->add_flag("--log", log_spaced, "Geometric sweep spacing");

  auto* expansion_cmd =
      app.add_subcommand("expansion", "Ratio I_{0,N,1}(v) / v^{(N-1)/N} against N^{1/N}");
  expansion_cmd->add_option("--N", n)->required();
  expansion_cmd->add_option("--v-min", v_min)->required();
  expansion_cmd->add_option("--v-max", v_max);
  expansion_cmd->add_option("--points", points)->check(CLI::Range(1, 100000));

  auto* validate_cmd = app.add_subcommand("validate-density", "MCP(0,N) density check");
  validate_cmd->add_option("--space", space_file)->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--N", n)->required();
  validate_cmd->add_option("--resolution", resolution)->check(CLI::Range(2, 1 << 16));

  auto* mindim_cmd = app.add_subcommand("min-dimension", "Smallest N passing the check");
  mindim_cmd->add_option("--space", space_file)->required()->check(CLI::ExistingFile);
  mindim_cmd->add_option("--n-lo", n_lo);
  mindim_cmd->add_option("--n-hi", n_hi);
  mindim_cmd->add_option("--resolution", resolution)->check(CLI::Range(2, 1 << 16));

  auto* avr_cmd = app.add_subcommand("avr", "Asymptotic volume ratio");
  avr_cmd->add_option("--space", space_file)->required()->check(CLI::ExistingFile);
  avr_cmd->add_option("--N", n)->required();
  avr_cmd->add_option("--r-max", r_max);

  auto* bounds_cmd = app.add_subcommand("bounds", "MCP and CD isoperimetric bounds");
  bounds_cmd->add_option("--N", n)->required();
  bounds_cmd->add_option("--avr", avr_value)->required();
  bounds_cmd->add_option("--mass", mass)->required();

  auto* sharp_cmd = app.add_subcommand("sharp", "Sharp extremal space and its gap");
  sharp_cmd->add_option("--avr", avr_value)->required();
  sharp_cmd->add_option("--mass", mass)->required();
  sharp_cmd->add_option("--N", n)->required();

  auto* search_cmd = app.add_subcommand("search", "Brute-force certification of the bound");
  search_cmd->add_option("--space", space_file)->required()->check(CLI::ExistingFile);
  search_cmd->add_option("--config", config_file)->required()->check(CLI::ExistingFile);

  auto* localize_cmd = app.add_subcommand("localize", "Dimension-reduction chain");
  localize_cmd->add_option("--model", model_file)->required()->check(CLI::ExistingFile);
  localize_cmd->add_option("--r", r)->required();
  localize_cmd->add_option("--R", R_spec, "Truncation radius or sweep a:b:n")->required();
  localize_cmd->add_flag("--log", log_spaced, "Geometric sweep spacing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Tolerance tol = tolerance_from_env();
    Report rep(out, format == "json" ? Format::json : Format::csv, precision);

    if (*profile_cmd) {
      const auto vs = parse_sweep(v_spec, log_spaced);
      std::vector<std::vector<Report::Cell>> rows;
      for (double v : vs) {
        const auto p = profile::profile_mcp(RealDimension(n), D, v, tol);
        rows.push_back({p.n, p.D, p.v, p.a, p.f_at_a, p.profile});
      }
      rep.table({"N", "D", "v", "a", "f_at_a", "profile"}, rows, vs.size() == 1);
      return kExitOk;
    }

    if (*expansion_cmd) {
      const RealDimension dim(n);
      if (!(v_min > 0.0 && v_max < 1.0 && v_min <= v_max))
        throw DomainError("expansion: need 0 < v-min <= v-max < 1");
      const double lead = profile::expansion_leading_coefficient(dim);
      std::vector<std::vector<Report::Cell>> rows;
      const std::string sweep = format_number(v_min, 17) + ":" + format_number(v_max, 17) +
                                ":" + std::to_string(points);
      for (double v : parse_sweep(sweep, true)) {
        const double I = profile::profile_mcp(dim, 1.0, v, tol).profile;
        const double ratio = I / std::pow(v, (n - 1.0) / n);
        rows.push_back({v, I, ratio, lead, (ratio - lead) / lead});
      }
      rep.table({"v", "profile", "ratio", "leading_coefficient", "rel_diff"}, rows, false);
      return kExitOk;
    }

    if (*validate_cmd) {
      const auto X = io::space_from_json(io::read_json_file(space_file));
      const auto verdict =
          check_mcp_density(X.density(), X.D(), RealDimension(n), tol, {resolution});
      std::vector<Report::Cell> row{to_string(verdict.status),
                                    static_cast<double>(verdict.samples_used)};
      witness_cells(verdict, row);
      rep.table({"status", "samples_used", "witness_x0", "witness_x1", "witness_side",
                 "witness_lhs", "witness_rhs"},
                {row}, true);
      return verdict.passed() ? kExitOk : kExitCheckFailed;
    }

    if (*mindim_cmd) {
      const auto X = io::space_from_json(io::read_json_file(space_file));
      const auto nstar =
          minimal_mcp_dimension(X.density(), X.D(), n_lo, n_hi, tol, {resolution});
      rep.table({"n_lo", "n_hi", "minimal_N"},
                {{n_lo, n_hi, nstar ? Report::Cell{*nstar} : Report::Cell{std::string("none")}}},
                true);
      return nstar ? kExitOk : kExitCheckFailed;
    }

    if (*avr_cmd) {
      const auto X = io::space_from_json(io::read_json_file(space_file));
      const auto a = space::avr(X, RealDimension(n), r_max);
      rep.table({"N", "avr", "certified"},
                {{n, a.value, std::string(a.certified ? "true" : "false")}}, true);
      return kExitOk;
    }

    if (*bounds_cmd) {
      const RealDimension dim(n);
      const double mcp = profile::avr_lower_bound(dim, avr_value, mass);
      const double cd = profile::cd_lower_bound(dim, avr_value, mass);
      const double ratio = mcp > 0.0 ? cd / mcp : std::nan("");
      rep.table({"N", "avr", "mass", "mcp", "cd", "cd_over_mcp"},
                {{n, avr_value, mass, mcp, cd, ratio}}, true);
      return kExitOk;
    }

    if (*sharp_cmd) {
      const RealDimension dim(n);
      const auto s = space::sharp_space(avr_value, mass, dim);
      const double content = space::minkowski_content(s.space, s.extremal_set);
      const double bound = profile::avr_lower_bound(dim, avr_value, mass);
      const double gap = content - bound;
      rep.table({"N", "avr", "mass", "threshold", "content", "bound", "gap", "space"},
                {{n, avr_value, mass, s.threshold, content, bound, gap,
                  io::to_json(s.space)}},
                true);
      return std::abs(gap) <= tol.abs_tol * std::max(1.0, bound) ? kExitOk
                                                                  : kExitCheckFailed;
    }

    if (*search_cmd) {
      const auto X = io::space_from_json(io::read_json_file(space_file));
      const auto job = io::search_job_from_json(io::read_json_file(config_file));
      const RealDimension dim(job.n);
      double avr_used = 0.0;
      if (job.avr) {
        avr_used = *job.avr;
      } else {
        const auto a = space::avr(X, dim);
        if (!a.certified)
          throw PreconditionError("search: AVR of the space is not certified; pass \"avr\"");
        avr_used = a.value;
      }
      const auto report = search::certify_bound(X, dim, avr_used, job.volumes, job.config, tol);
      std::vector<std::vector<Report::Cell>> rows;
      for (const auto& row : report.rows)
        rows.push_back({row.v, row.content, row.bound, row.margin, rounded_set(rep, row.best_set)});
      rep.table({"v", "content", "bound", "margin", "best_set"}, rows, false);
      err << "certify_bound: " << (report.passed ? "pass" : "FAIL") << '\n';
      return report.passed ? kExitOk : kExitCheckFailed;
    }

    if (*localize_cmd) {
      const auto model = io::model_from_json(io::read_json_file(model_file), tol);
      bool ok = true;
      std::vector<std::vector<Report::Cell>> rows;
      for (double R : parse_sweep(R_spec, log_spaced)) {
        const auto chain = localization::dimension_reduction_chain(model, r, R, tol);
        const double residual = localization::verify_disintegration(model, r, R);
        ok = ok && chain.ordered && residual <= 1e-9 * std::max(1.0, model.ball_measure(r));
        rows.push_back({R, chain.m_plus, chain.needle_integral, chain.scaled_profile_bound,
                        chain.avr_bound});
      }
      rep.table({"R", "m_plus", "needle_integral", "scaled_profile_bound", "avr_bound"}, rows,
                false);
      return ok ? kExitOk : kExitCheckFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mcpiso::cli
