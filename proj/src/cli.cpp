#include "sdea/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sdea/optimize.hpp"
#include "sdea/perf.hpp"

namespace sdea::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double lo, hi;
  int points;
};

GridSpec parse_grid(const std::string& s, const char* what) {
  GridSpec g{};
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.points, &tail) != 3)
    throw UsageError(std::string(what) + " must look like min:max:points");
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.hi <= g.lo || g.points < 2)
    throw UsageError(std::string(what) + " needs min < max and points >= 2");
  return g;
}

double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return rounded(v);
}

ordered_json num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

const char* branch_name(CubicBranch b) {
  switch (b) {
    case CubicBranch::kA: return "1";
    case CubicBranch::kB: return "2";
    case CubicBranch::kDegenerate: return "degenerate";
    case CubicBranch::kNone: return "none";
  }
  return "none";
}

Criterion parse_criterion(const std::string& s) {
  return s == "absolute" ? Criterion::kAbsolute : Criterion::kPassivity;
}

struct Common {
  std::string config;
  std::string criterion = "passivity";
  std::string grid;
  std::string output;
  std::string format;
};

CheckOptions check_options(const Common& c) {
  CheckOptions o;
  if (!c.grid.empty()) {
    const auto g = parse_grid(c.grid, "--grid");
    if (!(g.lo > 0.0)) throw UsageError("--grid needs positive frequencies");
    o.omega_min = g.lo;
    o.omega_max = g.hi;
    o.points = g.points;
  }
  return o;
}

class Emitter {
 public:
  Emitter(const Common& c, std::ostream& out, const char* default_format)
      : format_(c.format.empty() ? default_format : c.format), path_(c.output), out_(out) {}

  bool csv() const { return format_ == "csv"; }

  void write(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path_ + "'");
    f << text;
  }

  void write(const ordered_json& j) { write(j.dump(2) + "\n"); }

 private:
  std::string format_;
  std::string path_;
  std::ostream& out_;
};

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + "\n";
}

const char* yes(bool b) { return b ? "true" : "false"; }

Config need_coupler(const Common& c) {
  auto cfg = load_config(c.config);
  if (!cfg.vc) throw Error(ErrorCode::kConfig, "this command needs k22 and b22 in the config");
  return cfg;
}

int cmd_check(const Common& c, std::ostream& out) {
  const auto cfg = need_coupler(c);
  const auto opt = check_options(c);
  Emitter em(c, out, "json");
  const auto& p = cfg.params;
  const auto& vc = *cfg.vc;
  if (parse_criterion(c.criterion) == Criterion::kAbsolute) {
    const auto r = check_absolute_stability(p, vc, opt);
    if (em.csv()) {
      std::string s = "condition,pass,value\n";
      s += csv_row({"a", yes(r.a.pass), format_number(r.a.margin)});
      s += csv_row({"b", yes(r.b.pass), r.b.pole ? format_number(*r.b.pole) : ""});
      s += csv_row({"c-i", yes(r.ci.pass), r.ci.witness_omega ? format_number(*r.ci.witness_omega) : ""});
      s += csv_row({"c-ii", yes(r.cii_pass), format_number(r.min_margin)});
      s += csv_row({"overall", yes(r.overall), ""});
      em.write(s);
    } else {
      ordered_json j;
      j["criterion"] = "absolute";
      j["a"] = {{"pass", r.a.pass}, {"margin", num(r.a.margin)}};
      j["b"] = {{"pass", r.b.pass}, {"vacuous", r.b.vacuous}, {"pole_rad_s", num(r.b.pole)}};
      j["c_i"] = {{"pass", r.ci.pass}, {"failure", to_string(r.ci.failure)},
                  {"witness_rad_s", num(r.ci.witness_omega)}};
      j["c_ii"] = {{"pass", r.cii_pass}, {"min_relative_margin", num(r.min_margin)},
                   {"argmin_rad_s", num(r.argmin_omega)}};
      j["overall"] = r.overall;
      em.write(j);
    }
    return r.overall ? kPass : kFail;
  }
  const auto r = check_two_port_passivity(p, vc, opt);
  if (em.csv()) {
    std::string s = "condition,pass,value\n";
    s += csv_row({"a", yes(r.a.pass), format_number(r.a.margin)});
    s += csv_row({"b", yes(r.b.pass), r.b.pole ? format_number(*r.b.pole) : ""});
    s += csv_row({"c-i", yes(r.ci.pass), to_string(r.ci.failure)});
    s += csv_row({"c-ii", yes(r.cii.pass), to_string(r.cii.failure)});
    s += csv_row({"grid", yes(r.grid_pass), format_number(r.grid_min_relative)});
    s += csv_row({"overall", yes(r.overall), ""});
    em.write(s);
  } else {
    ordered_json j;
    j["criterion"] = "passivity";
    j["a"] = {{"pass", r.a.pass}, {"margin", num(r.a.margin)}, {"closed_form", r.a.closed_form}};
    j["b"] = {{"pass", r.b.pass}, {"vacuous", r.b.vacuous}, {"pole_rad_s", num(r.b.pole)},
              {"beta", num(r.b.beta)}};
    j["c_i"] = {{"pass", r.ci.pass}, {"branch", branch_name(r.ci.branch)},
                {"failure", to_string(r.ci.failure)}};
    j["c_ii"] = {{"pass", r.cii.pass}, {"branch", branch_name(r.cii.branch)},
                 {"failure", to_string(r.cii.failure)}};
    j["overall"] = r.overall;
    j["outside_closed_forms"] = r.outside_closed_forms;
    ordered_json w = ordered_json::array();
    for (const auto& x : r.witnesses) w.push_back({{"condition", x.condition}, {"value", num(x.value)}});
    j["witnesses"] = w;
    j["grid"] = {{"pass", r.grid_pass}, {"min_relative_margin", num(r.grid_min_relative)},
                 {"argmin_rad_s", num(r.grid_argmin)}};
    em.write(j);
  }
  return r.overall ? kPass : kFail;
}

void set_param(Config& cfg, const std::string& name, double v) {
  auto& p = cfg.params;
  if (name == "k22" || name == "b22") {
    if (!cfg.vc) throw UsageError("sweeping " + name + " needs a coupler in the config");
    (name == "k22" ? cfg.vc->k22 : cfg.vc->b22) = v;
    return;
  }
  double* slot = name == "Kf"      ? &p.Kf
                 : name == "Bf"    ? &p.Bf
                 : name == "J"     ? &p.M
                 : name == "B"     ? &p.B
                 : name == "Pm"    ? &p.Pm
                 : name == "Im"    ? &p.Im
                 : name == "Pf"    ? &p.Pf
                 : name == "If"    ? &p.If
                 : name == "alpha" ? &p.alpha
                                   : nullptr;
  if (!slot) throw UsageError("unknown sweep parameter '" + name + "'");
  *slot = v;
}

int cmd_sweep(const Common& c, const std::string& vary, const std::string& range, std::ostream& out) {
  const auto base = need_coupler(c);
  const auto opt = check_options(c);
  const auto g = parse_grid(range, "--range");
  const auto crit = parse_criterion(c.criterion);
  Emitter em(c, out, "csv");
  std::string s = "param,criterion,pass\n";
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < g.points; ++i) {
    const double v = g.lo + (g.hi - g.lo) * i / (g.points - 1);
    auto cfg = base;
    set_param(cfg, vary, v);
    cfg.params.validate();
    cfg.vc->validate();
    double value = NAN;
    bool pass = false;
    if (crit == Criterion::kAbsolute) {
      const auto r = check_absolute_stability(cfg.params, *cfg.vc, opt);
      value = r.min_margin;
      pass = r.overall;
    } else {
      const auto r = check_two_port_passivity(cfg.params, *cfg.vc, opt);
      value = r.grid_min_relative;
      pass = r.overall;
    }
    s += csv_row({format_number(v), format_number(value), yes(pass)});
    rows.push_back({{"param", num(v)}, {"criterion", num(value)}, {"pass", pass}});
  }
  if (em.csv())
    em.write(s);
  else
    em.write(ordered_json{{"vary", vary}, {"criterion", c.criterion}, {"rows", rows}});
  return kPass;
}

int cmd_optimize(const Common& c, const std::string& over, std::ostream& out) {
  const auto cfg = load_config(c.config);
  OptimizeOptions opt;
  opt.check = check_options(c);
  const auto crit = parse_criterion(c.criterion);
  Emitter em(c, out, "json");
  std::string note;
  const OptimizationResult r = [&] {
    try {
      return over == "b22+alpha" ? maximize_k22_over_alpha(cfg.params, crit, opt)
                                 : maximize_k22(cfg.params, crit, opt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBaselineNotPassive) throw;
      note = e.what();
      OptimizationResult none;
      none.criterion = crit;
      none.alpha_opt = cfg.params.alpha;
      return none;
    }
  }();
  if (note.empty() && !r.feasible)
    note = cfg.params.Bf > 0.0
               ? "no b22 in (0, 4Bf] admits a positive k22"
               : "infeasible: with Bf = 0 the condition 0 < b22 <= 4Bf cannot hold, so no "
                 "virtual coupler makes the device two-port passive; physical damping "
                 "parallel to the spring is required";
  const bool ok = note.empty();
  const double alpha = r.alpha_opt.has_value() ? r.alpha_opt.value() : cfg.params.alpha;
  if (em.csv()) {
    std::string s = "k22_max,b22_opt,alpha_opt,criterion,feasible\n";
    s += csv_row({format_number(r.k22_max), format_number(r.b22_opt),
                  format_number(alpha), to_string(crit), yes(ok)});
    em.write(s);
  } else {
    ordered_json j;
    j["criterion"] = to_string(crit);
    j["over"] = over;
    j["feasible"] = ok;
    j["k22_max"] = num(r.k22_max);
    j["b22_opt"] = num(r.b22_opt);
    j["alpha_opt"] = num(alpha);
    j["unimodal"] = r.unimodal;
    j["evaluations"] = r.trace.size();
    if (!ok) j["explanation"] = note;
    em.write(j);
  }
  return ok ? kPass : kFail;
}

EnvironmentModel parse_env(const std::string& s) {
  std::vector<double> v;
  std::string kind = s;
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    kind = s.substr(0, colon);
    std::stringstream rest(s.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ':')) {
      char* end = nullptr;
      const double x = std::strtod(item.c_str(), &end);
      if (item.empty() || *end != '\0') throw UsageError("bad number '" + item + "' in " + s);
      v.push_back(x);
    }
  }
  if (kind == "null" && v.empty()) return EnvironmentModel::null();
  if (kind == "spring" && v.size() == 1) return EnvironmentModel::spring(v[0]);
  if (kind == "damper" && v.size() == 1) return EnvironmentModel::damper(v[0]);
  if (kind == "voigt" && v.size() == 2) return EnvironmentModel::voigt(v[0], v[1]);
  throw UsageError("environment must be null, spring:Ke, damper:Be or voigt:Ke:Be");
}

int cmd_bode(const Common& c, const std::string& target, std::ostream& out) {
  const auto cfg = need_coupler(c);
  const auto opt = check_options(c);
  const auto h = hybrid_matrix_exact(cfg.params, *cfg.vc);
  ExactRationalFunction z;
  if (target == "h11" || target == "zmin")
    z = target == "h11" ? h.h11 : z_min(h);
  else if (target == "h12")
    z = h.h12;
  else if (target == "h21")
    z = h.h21;
  else if (target == "h22")
    z = h.h22;
  else if (target == "zwidth")
    z = z_width(h);
  else if (target.rfind("zto:", 0) == 0)
    z = transmitted_impedance(h, parse_env(target.substr(4)));
  else
    throw UsageError("unknown bode target '" + target + "'");
  const auto pts = frequency_response(to_double(z), opt.grid());
  Emitter em(c, out, "csv");
  if (em.csv()) {
    std::string s = "omega_rad_s,magnitude_db,phase_deg\n";
    for (const auto& p : pts)
      s += csv_row({format_number(p.omega), format_number(p.magnitude_db), format_number(p.phase_deg)});
    em.write(s);
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& p : pts)
      rows.push_back({{"omega_rad_s", num(p.omega)}, {"magnitude_db", num(p.magnitude_db)},
                      {"phase_deg", num(p.phase_deg)}});
    em.write(ordered_json{{"target", target}, {"points", rows}});
  }
  return kPass;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON parameter file")->required();
  sub->add_option("--criterion", c.criterion, "passivity or absolute")
      ->check(CLI::IsMember({"passivity", "absolute"}));
  sub->add_option("--grid", c.grid, "min:max:points log frequency grid [rad/s]");
  sub->add_option("--output", c.output, "write here instead of stdout");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Passivity and stability analysis of SDEA under velocity-sourced impedance control",
               "sdea"};
  app.require_subcommand(1);
  Common common;
  std::string vary, range, over = "b22", target = "h11";

  auto* check = app.add_subcommand("check", "two-port passivity or absolute stability verdict");
  add_common(check, common);
  auto* sweep = app.add_subcommand("sweep", "vary one parameter and report the criterion");
  add_common(sweep, common);
  sweep->add_option("--vary", vary, "Kf, Bf, J, B, Pm, Im, Pf, If, alpha, k22 or b22")->required();
  sweep->add_option("--range", range, "min:max:points, linear")->required();
  auto* optimize = app.add_subcommand("optimize", "maximise k22 over b22 (and alpha)");
  add_common(optimize, common);
  optimize->add_option("--over", over, "b22 or b22+alpha")->check(CLI::IsMember({"b22", "b22+alpha"}));
  auto* bode = app.add_subcommand("bode", "frequency response export");
  add_common(bode, common);
  bode->add_option("--target", target, "h11, h12, h21, h22, zmin, zwidth or zto:<env>");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "sdea: " << e.what() << "\n";
    return kUsage;
  }
  try {
    if (check->parsed()) return cmd_check(common, out);
    if (sweep->parsed()) return cmd_sweep(common, vary, range, out);
    if (optimize->parsed()) return cmd_optimize(common, over, out);
    return cmd_bode(common, target, out);
  } catch (const UsageError& e) {
    err << "sdea: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "sdea: " << e.what() << "\n";
    return e.code() == ErrorCode::kConfig || e.code() == ErrorCode::kInvalidParams ? kUsage : kFail;
  }
}

}  // namespace sdea::cli
