// Copyright 2026 The wva Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// wva: command-line front end.
//
// Exit codes: 0 ok, 2 configuration error, 3 no finite result (divergent
// weak value, infeasible optimization, no threshold), 4 oracle mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config_file.hpp"
#include "wva/wva.hpp"

namespace {

using wva::Json;

enum ExitCode : int { kOk = 0, kConfigError = 2, kNoFiniteResult = 3, kOracleFailure = 4 };

struct Flags {
  std::optional<std::string> state_name;
  std::optional<double> c1, c2, c3, werner_c;
  std::optional<std::string> state_json, scenario_json;

  std::optional<double> theta_a, phi_a, theta_b, phi_b, delta, theta_e, phi_e;
  bool trace_b = false;
  bool trace_e = false;

  std::optional<double> p0, sigma, squeeze_r;
  std::optional<std::string> meter_json;

  std::optional<double> gt;
  bool weak_limit = false;

  std::string out;
  std::string format;
  std::string config;
};

// --- option registration ---------------------------------------------------

void number_option(CLI::App* app, const std::string& name, std::optional<double>& dst,
                   const std::string& desc) {
  app->add_option_function<std::string>(
      name, [&dst, name](const std::string& s) {
        double v = 0.0;
        if (!wva::detail::parse_plain_number(s, v))
          throw wva::InvalidArgument(name + " expects a number, got '" + s + "'");
        dst = v;
      },
      desc);
}

void angle_option(CLI::App* app, const std::string& name, std::optional<double>& dst,
                  const std::string& desc) {
  app->add_option_function<std::string>(
      name, [&dst](const std::string& s) { dst = wva::parse_angle(s); }, desc + " [angle]");
}

void add_state_flags(CLI::App* app, Flags& f, bool three_qubit) {
  std::string names = "bell-phi-plus, maximally-mixed, uncorrelated";
  if (three_qubit) names += ", ghz, w";
  app->add_option_function<std::string>(
         "--state", [&f](const std::string& s) { f.state_name = s; },
         "named state: " + names)
      ->group("State");
  number_option(app, "--c1", f.c1, "BD correlation c1");
  number_option(app, "--c2", f.c2, "BD correlation c2");
  number_option(app, "--c3", f.c3, "BD correlation c3");
  number_option(app, "--werner-c", f.werner_c, "Werner state, (c1,c2,c3) = (-c,-c,-c), c in [0,1]");
  app->add_option_function<std::string>(
         "--state-json", [&f](const std::string& s) { f.state_json = s; },
         R"(BD state as JSON {"c1":..,"c2":..,"c3":..})")
      ->group("State");
  if (three_qubit)
    app->add_option_function<std::string>(
           "--scenario-json", [&f](const std::string& s) { f.scenario_json = s; },
           R"(three-qubit scenario {"initial":"GHZ"|"W","ps_a":{..},"controls":[..]})")
        ->group("State");
  for (const char* n : {"--c1", "--c2", "--c3", "--werner-c"}) app->get_option(n)->group("State");
}

void add_angle_flags(CLI::App* app, Flags& f, bool three_qubit) {
  angle_option(app, "--theta-a", f.theta_a, "target post-selection polar angle (default 0)");
  angle_option(app, "--phi-a", f.phi_a, "target post-selection phase (default 0)");
  angle_option(app, "--theta-b", f.theta_b, "control post-selection polar angle (default 0)");
  angle_option(app, "--phi-b", f.phi_b, "control post-selection phase (default 0)");
  angle_option(app, "--delta", f.delta,
               "relative phase phi_a + phi_b; sets phi_a with phi_b = 0 unless those are given");
  app->add_flag("--trace-b", f.trace_b, "trace out the control instead of projecting it");
  std::vector<std::string> names{"--theta-a", "--phi-a", "--theta-b", "--phi-b", "--delta",
                                 "--trace-b"};
  if (three_qubit) {
    angle_option(app, "--theta-e", f.theta_e, "second control polar angle (default 0)");
    angle_option(app, "--phi-e", f.phi_e, "second control phase (default 0)");
    app->add_flag("--trace-e", f.trace_e, "trace out the second control");
    names.insert(names.end(), {"--theta-e", "--phi-e", "--trace-e"});
  }
  for (const auto& n : names) app->get_option(n)->group("Post-selection");
}

void add_meter_flags(CLI::App* app, Flags& f) {
  number_option(app, "--p0", f.p0, "initial pointer momentum (default 0)");
  number_option(app, "--sigma", f.sigma, "meter momentum spread, > 0 (default 0.5)");
  number_option(app, "--squeeze-r", f.squeeze_r, "squeezing r >= 0; sigma = exp(r)/2");
  app->add_option_function<std::string>(
      "--meter-json", [&f](const std::string& s) { f.meter_json = s; },
      R"(meter as JSON {"p0":..,"sigma":..} or {"p0":..,"r":..})");
  for (const char* n : {"--p0", "--sigma", "--squeeze-r", "--meter-json"})
    app->get_option(n)->group("Meter");
}

void add_coupling_flags(CLI::App* app, Flags& f) {
  number_option(app, "--gt", f.gt, "accumulated coupling gt >= 0 (default 0)");
  app->add_flag("--weak-limit", f.weak_limit,
                "take gt/sigma -> 0 in the meter overlap (J10 = 1), keep gt as the pointer scale");
  app->get_option("--gt")->group("Coupling");
  app->get_option("--weak-limit")->group("Coupling");
}

void add_output_flags(CLI::App* app, Flags& f, const std::string& default_format) {
  app->add_option("--out", f.out, "write to this file instead of stdout")->group("Output");
  app->add_option("--format", f.format, "csv or json (default " + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}))
      ->group("Output");
}

// --- resolution ------------------------------------------------------------

enum class StateKind { bd, uncorrelated, ghz, w, scenario };

struct ResolvedState {
  StateKind kind = StateKind::bd;
  wva::BellDiagonalState bd;
  std::optional<wva::ThreeQubitScenario> scenario;
};

ResolvedState resolve_state(const Flags& f, bool allow_three_qubit) {
  const bool triple = f.c1 || f.c2 || f.c3;
  const int specs = (f.state_name ? 1 : 0) + (triple ? 1 : 0) + (f.werner_c ? 1 : 0) +
                    (f.state_json ? 1 : 0) + (f.scenario_json ? 1 : 0);
  wva::detail::require(specs == 1,
                       "give exactly one state spec: --state, --c1/--c2/--c3, --werner-c, "
                       "--state-json" +
                           std::string(allow_three_qubit ? " or --scenario-json" : ""));
  ResolvedState out;
  if (triple) {
    wva::detail::require(f.c1 && f.c2 && f.c3, "--c1, --c2 and --c3 must be given together");
    out.bd = {*f.c1, *f.c2, *f.c3};
    wva::require_valid(out.bd);
  } else if (f.werner_c) {
    out.bd = wva::werner(*f.werner_c);
  } else if (f.state_json) {
    out.bd = wva::bd_state_from_json(wva::parse_json(*f.state_json));
  } else if (f.scenario_json) {
    out.kind = StateKind::scenario;
    out.scenario = wva::scenario_from_json(wva::parse_json(*f.scenario_json));
  } else {
    const auto& n = *f.state_name;
    if (n == "bell-phi-plus") {
      out.bd = wva::bell_phi_plus();
    } else if (n == "maximally-mixed") {
      out.bd = wva::maximally_mixed();
    } else if (n == "uncorrelated") {
      out.kind = StateKind::uncorrelated;
    } else if (allow_three_qubit && n == "ghz") {
      out.kind = StateKind::ghz;
    } else if (allow_three_qubit && n == "w") {
      out.kind = StateKind::w;
    } else {
      throw wva::InvalidArgument("unknown state '" + n + "'");
    }
  }
  return out;
}

wva::BellDiagonalState resolve_bd(const Flags& f) {
  const auto s = resolve_state(f, false);
  wva::detail::require(s.kind == StateKind::bd, "this command needs a Bell-diagonal state");
  return s.bd;
}

wva::MeterProfile resolve_meter(const Flags& f) {
  const int specs = (f.sigma ? 1 : 0) + (f.squeeze_r ? 1 : 0) + (f.meter_json ? 1 : 0);
  wva::detail::require(specs <= 1, "give the meter width once: --sigma, --squeeze-r or --meter-json");
  if (f.meter_json) {
    wva::detail::require(!f.p0, "--p0 conflicts with --meter-json");
    return wva::meter_from_json(wva::parse_json(*f.meter_json));
  }
  const double p0 = f.p0.value_or(0.0);
  if (f.squeeze_r) return wva::MeterProfile::make(p0, wva::sigma_from_squeeze({*f.squeeze_r}));
  return wva::MeterProfile::make(p0, f.sigma.value_or(0.5));
}

wva::CouplingSchedule resolve_coupling(const Flags& f) {
  return wva::CouplingSchedule::make(f.gt.value_or(0.0), f.weak_limit);
}

wva::PostSelection target_selection(const Flags& f) {
  const double phi = f.phi_a ? *f.phi_a : f.delta.value_or(0.0);
  return wva::PostSelection(f.theta_a.value_or(0.0), phi);
}

wva::PostSelection control_selection(const Flags& f) {
  return wva::PostSelection(f.theta_b.value_or(0.0), f.phi_b.value_or(0.0));
}

wva::ControlConfig resolve_config(const Flags& f) {
  return {resolve_bd(f), target_selection(f), control_selection(f), resolve_meter(f),
          resolve_coupling(f)};
}

wva::ThreeQubitScenario resolve_scenario(const Flags& f, const ResolvedState& s) {
  if (s.kind == StateKind::scenario) return *s.scenario;
  wva::ThreeQubitScenario sc;
  sc.initial = s.kind == StateKind::ghz ? wva::ghz_state() : wva::w_state();
  sc.target = target_selection(f);
  sc.controls[0] = f.trace_b ? wva::ControlAction::trace()
                             : wva::ControlAction::project(control_selection(f));
  sc.controls[1] = f.trace_e ? wva::ControlAction::trace()
                             : wva::ControlAction::project(wva::PostSelection(
                                   f.theta_e.value_or(0.0), f.phi_e.value_or(0.0)));
  return sc;
}

// --- output ----------------------------------------------------------------

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      wva::detail::require(static_cast<bool>(file_), "cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const wva::Dataset& ds, const Flags& f) {
  Output out(f.out);
  if (f.format == "json") {
    wva::write_json(ds, out.stream());
  } else {
    wva::write_csv(ds, out.stream());
  }
}

void emit(const Json& j, const Flags& f) {
  Output out(f.out);
  out.stream() << j.dump(2) << "\n";
}

/// One-row dataset for commands whose natural output is a single record.
wva::Dataset record_dataset(const Json& meta, const Json& record) {
  wva::Dataset ds;
  ds.metadata = meta;
  std::vector<wva::Cell> row;
  for (const auto& [k, v] : record.items()) {
    ds.table.columns.push_back(k);
    if (v.is_number()) {
      row.emplace_back(v.get<double>());
    } else if (v.is_boolean()) {
      row.emplace_back(v.get<bool>());
    } else if (v.is_string()) {
      row.emplace_back(v.get<std::string>());
    } else if (v.is_null()) {
      row.emplace_back(std::monostate{});
    } else {
      row.emplace_back(v.dump());
    }
  }
  ds.table.rows.push_back(std::move(row));
  return ds;
}

Json header(const std::string& command) {
  Json j;
  j["command"] = command;
  j["version"] = std::string(wva::kVersion);
  return j;
}

// --- eval ------------------------------------------------------------------

struct EvalOptions {
  bool oracle = false;
};

int run_eval(const Flags& f, const EvalOptions& o) {
  const auto s = resolve_state(f, true);
  const auto m = resolve_meter(f);
  const auto c = resolve_coupling(f);
  if (o.oracle)
    wva::detail::require(!c.weak_limit, "--oracle needs a finite coupling (drop --weak-limit)");

  Json meta = header("eval");
  wva::WeakValueReport report;
  std::optional<wva::OracleProblem> problem;
  const auto a = target_selection(f);
  switch (s.kind) {
    case StateKind::bd: {
      const wva::ControlConfig cfg{s.bd, a, control_selection(f), m, c};
      meta["config"] = wva::to_json(wva::EvalPoint{cfg, f.trace_b});
      report = wva::evaluate_point(wva::EvalPoint{cfg, f.trace_b});
      const auto action = f.trace_b ? wva::ControlAction::trace()
                                    : wva::ControlAction::project(cfg.control);
      problem = wva::make_oracle_problem(wva::bd_density_matrix(s.bd), a, action, m, c);
      break;
    }
    case StateKind::uncorrelated: {
      meta["config"] = {{"state", "uncorrelated"}, {"ps_a", wva::to_json(a)},
                        {"meter", wva::to_json(m)}, {"gt", c.gt}, {"weak_limit", c.weak_limit}};
      report = wva::weak_value_uncorrelated(a, m, c);
      problem = wva::make_oracle_problem(wva::uncorrelated_plus_zero(), a,
                                         wva::ControlAction::trace(), m, c);
      break;
    }
    default: {
      const auto sc = resolve_scenario(f, s);
      meta["config"] = {{"scenario", wva::to_json(sc)}, {"meter", wva::to_json(m)},
                        {"gt", c.gt}, {"weak_limit", c.weak_limit}};
      report = wva::three_qubit_weak_value(sc, m, c);
      problem = wva::make_oracle_problem(sc.initial, sc.target, sc.controls, m, c);
      break;
    }
  }

  Json record = wva::to_json(report);
  if (o.oracle) {
    const auto r = wva::oracle_mean_p(*problem);
    record["oracle_mean_p"] = r.verdict == wva::Verdict::finite ? Json(r.mean_p) : Json(nullptr);
    record["oracle_converged"] = r.converged;
  }
  if (f.format == "csv") {
    emit(record_dataset(meta, record), f);
  } else {
    meta["report"] = record;
    emit(meta, f);
  }
  return report.divergent() ? kNoFiniteResult : kOk;
}

// --- figure ----------------------------------------------------------------

struct FigureArgs {
  std::string id;
  std::optional<int> points;
};

int run_figure(const Flags& f, const FigureArgs& a) {
  wva::FigureOptions o;
  o.points = a.points;
  o.theta_a = f.theta_a;
  o.gt = f.gt;
  emit(wva::figure_dataset(wva::parse_figure_id(a.id), o), f);
  return kOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string param, param2;
  std::string lo, hi, lo2, hi2;
  int steps = 101;
  int steps2 = 101;
};

int run_sweep(const Flags& f, const SweepArgs& a) {
  wva::SweepPlan plan;
  plan.base = {resolve_config(f), f.trace_b};
  plan.axes.push_back({wva::parse_sweep_param(a.param), wva::parse_angle(a.lo),
                       wva::parse_angle(a.hi), a.steps});
  if (!a.param2.empty()) {
    wva::detail::require(!a.lo2.empty() && !a.hi2.empty(), "--param2 needs --lo2 and --hi2");
    plan.axes.push_back({wva::parse_sweep_param(a.param2), wva::parse_angle(a.lo2),
                         wva::parse_angle(a.hi2), a.steps2});
  }
  const auto ds = wva::run_sweep(plan);
  emit(ds, f);
  const auto col = ds.table.column("verdict");
  for (const auto& row : ds.table.rows)
    if (std::get<std::string>(row[col]) == "finite") return kOk;
  return kNoFiniteResult;
}

// --- threshold -------------------------------------------------------------

struct ThresholdArgs {
  std::string variable = "gt";
  double sigma_lo = 0.5;
  double sigma_hi = 1.5;
  int steps = 3;
};

int run_threshold(const Flags& f, const ThresholdArgs& a) {
  wva::detail::require(!f.weak_limit, "thresholds need a finite gt/sigma; drop --weak-limit");
  const auto s = resolve_state(f, false);
  if (a.variable == "r") {
    wva::detail::require(s.kind == StateKind::bd, "the squeezing threshold needs a BD state");
    wva::detail::require(f.gt.has_value(), "--variable r needs --gt");
    const wva::ControlConfig cfg{s.bd, target_selection(f), control_selection(f),
                                 wva::MeterProfile{}, wva::CouplingSchedule{}};
    const auto t = wva::amplification_threshold_r(cfg, *f.gt);
    Json meta = header("threshold");
    meta["variable"] = "r";
    meta["config"] = wva::to_json(wva::EvalPoint{cfg, false});
    meta["gt"] = *f.gt;
    Json rec;
    rec["gt"] = *f.gt;
    rec["r_c"] = t.found ? Json(t.value) : Json(nullptr);
    rec["sigma_c"] = t.found ? Json(wva::sigma_from_squeeze({t.value})) : Json(nullptr);
    rec["found"] = t.found;
    rec["reason"] = t.reason;
    emit(record_dataset(meta, rec), f);
    return t.found ? kOk : kNoFiniteResult;
  }
  wva::detail::require(a.variable == "gt", "--variable must be gt or r");
  wva::ThresholdCurve curve;
  if (s.kind == StateKind::uncorrelated) {
    curve = wva::threshold_curve_uncorrelated(target_selection(f), a.sigma_lo, a.sigma_hi, a.steps);
  } else {
    const wva::ControlConfig cfg{s.bd, target_selection(f), control_selection(f),
                                 wva::MeterProfile{}, wva::CouplingSchedule{}};
    curve = wva::threshold_curve(cfg, a.sigma_lo, a.sigma_hi, a.steps);
  }
  curve.dataset.metadata["command"] = "threshold";
  emit(curve.dataset, f);
  return curve.all_found ? kOk : kNoFiniteResult;
}

// --- correlations ----------------------------------------------------------

int run_correlations(const Flags& f) {
  const auto s = resolve_bd(f);
  const auto rep = wva::correlation_report(s);
  const auto ev = wva::bd_eigenvalues(s);
  Json meta = header("correlations");
  meta["state"] = wva::to_json(s);
  Json rec = wva::to_json(rep);
  rec["axis_classical"] = wva::classify_axis_classical(s);
  if (f.format == "csv") {
    emit(record_dataset(meta, rec), f);
  } else {
    meta["eigenvalues"] = ev;
    meta["report"] = rec;
    emit(meta, f);
  }
  return kOk;
}

// --- oracle-check ----------------------------------------------------------

struct OracleArgs {
  int samples = 1000;
  std::uint64_t seed = 42;
  int nodes = 4001;
  double half_width = 12.0;
  double tolerance = 1e-8;
};

struct OracleCase {
  std::string kind;
  std::optional<wva::BellDiagonalState> bd;
  wva::PostSelection a, b, e;
  bool trace_b = false, trace_e = false;
  wva::MeterProfile meter;
  wva::CouplingSchedule coupling;
};

OracleCase random_case(std::mt19937_64& rng, int index) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto theta = [&] { return wva::kPi * unit(rng); };
  const auto phi = [&] { return 2.0 * wva::kPi * unit(rng); };
  OracleCase c;
  static const char* kinds[] = {"bd", "bd_traced", "ghz", "w"};
  c.kind = kinds[index % 4];
  if (index % 4 < 2) {
    wva::BellDiagonalState s;
    do {
      s = {2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
    } while (!wva::validate_bd(s).valid);
    c.bd = s;
  }
  c.a = wva::PostSelection(theta(), phi());
  c.b = wva::PostSelection(theta(), phi());
  c.e = wva::PostSelection(theta(), phi());
  c.trace_b = c.kind == "bd_traced" || (index % 4 >= 2 && unit(rng) < 1.0 / 3.0);
  c.trace_e = index % 4 >= 2 && unit(rng) < 1.0 / 3.0;
  const double sigma = 0.3 + 4.7 * unit(rng);
  const double gt = 3.0 * unit(rng);
  const double p0 = unit(rng) < 0.5 ? 0.0 : 1.0;
  c.meter = wva::MeterProfile::make(p0, sigma);
  c.coupling = wva::CouplingSchedule::make(gt);
  return c;
}

int run_oracle_check(const Flags& f, const OracleArgs& a) {
  wva::detail::require(a.samples >= 1, "--samples must be >= 1");
  const wva::QuadratureSpec q{a.half_width, a.nodes};
  q.validate();
  std::mt19937_64 rng(a.seed);
  std::vector<OracleCase> cases;
  cases.reserve(static_cast<std::size_t>(a.samples));
  for (int i = 0; i < a.samples; ++i) cases.push_back(random_case(rng, i));

  wva::Dataset ds;
  ds.table.columns = {"index",   "kind",    "c1",      "c2",    "c3",    "theta_a",     "phi_a",
                      "control_b", "theta_b", "phi_b", "control_e", "theta_e", "phi_e", "p0",
                      "sigma",   "gt",      "closed_form", "oracle", "abs_diff", "converged",
                      "pass"};
  ds.table.rows.resize(cases.size());
  std::vector<double> diffs(cases.size(), 0.0);
  std::vector<char> passed(cases.size(), 0);
  wva::parallel_for(cases.size(), [&](std::size_t i) {
    const auto& c = cases[i];
    std::optional<double> closed;
    wva::OracleResult oracle;
    wva::Cell c1, c2, c3;
    if (c.bd) {
      c1 = c.bd->c1;
      c2 = c.bd->c2;
      c3 = c.bd->c3;
      const auto action =
          c.trace_b ? wva::ControlAction::trace() : wva::ControlAction::project(c.b);
      closed = c.trace_b ? std::optional<double>(wva::mean_p_traced(c.a.theta(), c.meter, c.coupling))
                         : wva::weak_value_projected(*c.bd, c.a, c.b, c.meter, c.coupling).mean_p;
      oracle = wva::oracle_mean_p(
          wva::make_oracle_problem(wva::bd_density_matrix(*c.bd), c.a, action, c.meter, c.coupling),
          q);
    } else {
      const wva::ThreeQubitScenario sc{
          c.kind == "ghz" ? wva::ghz_state() : wva::w_state(), c.a,
          {c.trace_b ? wva::ControlAction::trace() : wva::ControlAction::project(c.b),
           c.trace_e ? wva::ControlAction::trace() : wva::ControlAction::project(c.e)}};
      closed = wva::three_qubit_weak_value(sc, c.meter, c.coupling).mean_p;
      oracle = wva::oracle_mean_p(
          wva::make_oracle_problem(sc.initial, sc.target, sc.controls, c.meter, c.coupling), q);
    }
    const bool oracle_finite = oracle.verdict == wva::Verdict::finite;
    double diff = 0.0;
    bool ok = false;
    if (closed && oracle_finite) {
      diff = std::abs(*closed - oracle.mean_p);
      ok = diff <= a.tolerance && oracle.converged;
    } else {
      ok = !closed && !oracle_finite;
    }
    diffs[i] = diff;
    passed[i] = ok ? 1 : 0;
    const bool three = !c.bd;
    ds.table.rows[i] = {static_cast<double>(i),
                        c.kind,
                        c1,
                        c2,
                        c3,
                        c.a.theta(),
                        c.a.phi(),
                        std::string(c.trace_b ? "trace" : "project"),
                        c.trace_b ? wva::Cell{} : wva::Cell{c.b.theta()},
                        c.trace_b ? wva::Cell{} : wva::Cell{c.b.phi()},
                        three ? wva::Cell{std::string(c.trace_e ? "trace" : "project")} : wva::Cell{},
                        three && !c.trace_e ? wva::Cell{c.e.theta()} : wva::Cell{},
                        three && !c.trace_e ? wva::Cell{c.e.phi()} : wva::Cell{},
                        c.meter.p0,
                        c.meter.sigma,
                        c.coupling.gt,
                        wva::optional_cell(closed),
                        oracle_finite ? wva::Cell{oracle.mean_p} : wva::Cell{},
                        diff,
                        oracle.converged,
                        ok};
  });

  double max_diff = 0.0;
  int failures = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    max_diff = std::max(max_diff, diffs[i]);
    failures += passed[i] ? 0 : 1;
  }
  ds.metadata = header("oracle-check");
  ds.metadata["samples"] = a.samples;
  ds.metadata["seed"] = a.seed;
  ds.metadata["quadrature"] = {{"half_width", a.half_width}, {"nodes", a.nodes}};
  ds.metadata["tolerance"] = a.tolerance;
  ds.metadata["max_abs_diff"] = max_diff;
  ds.metadata["failures"] = failures;
  emit(ds, f);
  std::cerr << "oracle-check: " << a.samples << " cases, max |diff| = " << max_diff
            << ", failures = " << failures << "\n";
  return failures == 0 ? kOk : kOracleFailure;
}

// --- optimize --------------------------------------------------------------

struct OptimizeArgs {
  std::vector<std::string> free;
  double p_min = 0.1;
  int grid_points = 61;
  double tolerance = 1e-6;
  std::string trace_out;
};

wva::FreeVariable parse_free(const std::string& spec) {
  const auto c1 = spec.find(':');
  if (c1 == std::string::npos) return wva::FreeVariable::full(wva::parse_opt_var(spec));
  const auto c2 = spec.find(':', c1 + 1);
  wva::detail::require(c2 != std::string::npos, "free variable spec is name or name:lo:hi");
  return {wva::parse_opt_var(spec.substr(0, c1)), wva::parse_angle(spec.substr(c1 + 1, c2 - c1 - 1)),
          wva::parse_angle(spec.substr(c2 + 1))};
}

int run_optimize(const Flags& f, const OptimizeArgs& a) {
  wva::OptimizationProblem pr;
  pr.base = resolve_config(f);
  for (const auto& s : a.free) pr.free.push_back(parse_free(s));
  pr.p_min = a.p_min;
  pr.grid_points = a.grid_points;
  pr.tolerance = a.tolerance;
  const auto res = wva::optimize_amplification(pr);

  Json j = header("optimize");
  j["problem"] = {{"base", wva::to_json(wva::EvalPoint{pr.base, false})},
                  {"p_min", pr.p_min},
                  {"grid_points", pr.grid_points},
                  {"tolerance", pr.tolerance}};
  Json fv = Json::array();
  for (const auto& v : pr.free)
    fv.push_back({{"name", std::string(wva::to_string(v.var))}, {"lo", v.lo}, {"hi", v.hi}});
  j["problem"]["free"] = fv;
  j["verdict"] = res.verdict;
  Json best = Json::object();
  for (std::size_t k = 0; k < res.x.size(); ++k)
    best[std::string(wva::to_string(pr.free[k].var))] = res.x[k];
  j["best"] = best;
  j["config"] = wva::to_json(wva::EvalPoint{res.config, false});
  j["report"] = wva::to_json(res.report);
  j["objective"] = res.feasible ? Json(res.objective) : Json(nullptr);
  j["grid_best_objective"] =
      res.grid_best.objective && res.grid_best.feasible ? Json(*res.grid_best.objective) : Json(nullptr);
  j["scanned"] = res.trace.size();
  j["refinement_moves"] = res.refinement_moves;
  emit(j, f);

  if (!a.trace_out.empty()) {
    wva::Dataset tr;
    tr.metadata = j["problem"];
    for (const auto& v : pr.free) tr.table.columns.emplace_back(wva::to_string(v.var));
    for (const char* col : {"objective", "probability", "valid_state", "feasible"})
      tr.table.columns.emplace_back(col);
    for (const auto& e : res.trace) {
      std::vector<wva::Cell> row(e.x.begin(), e.x.end());
      row.push_back(wva::optional_cell(e.objective));
      row.emplace_back(e.probability);
      row.emplace_back(e.valid_state);
      row.emplace_back(e.feasible);
      tr.table.rows.push_back(std::move(row));
    }
    Output out(a.trace_out);
    wva::write_csv(tr, out.stream());
  }
  return res.feasible ? kOk : kNoFiniteResult;
}

// --- sensitivity -----------------------------------------------------------

struct SensitivityArgs {
  double shift = 1e-3;
  double detection_limit = 1e-2;
};

int run_sensitivity(const Flags& f, const SensitivityArgs& a) {
  const auto cfg = resolve_config(f);
  const auto eta = wva::sensitivity_eta(cfg, a.shift);
  const auto res = wva::resolvable_angle(cfg, a.detection_limit);
  Json j = header("sensitivity");
  j["config"] = wva::to_json(wva::EvalPoint{cfg, false});
  j["shift"] = a.shift;
  j["detection_limit"] = a.detection_limit;
  j["reading"] = std::string(wva::kSensitivityReading);
  j["detection_reading"] = std::string(wva::kDetectionLimitReading);
  Json rec;
  rec["status"] = std::string(wva::to_string(eta.status));
  rec["weak_value"] = eta.weak_value;
  rec["weak_value_shifted"] = eta.weak_value_shifted;
  rec["derivative"] = eta.derivative;
  rec["derivative_fd"] = eta.derivative_fd;
  rec["derivative_agrees"] = eta.derivative_agrees;
  rec["eta"] = eta.eta;
  rec["min_resolvable_angle"] =
      res.status == wva::SensitivityStatus::ok ? Json(res.min_angle) : Json(nullptr);
  rec["probability"] = eta.probability;
  if (f.format == "csv") {
    emit(record_dataset(j, rec), f);
  } else {
    j["result"] = rec;
    emit(j, f);
  }
  return eta.status == wva::SensitivityStatus::divergent ? kNoFiniteResult : kOk;
}

// --- help text -------------------------------------------------------------

constexpr const char* kWeakValueFormula =
    "  <s_z>_W = (c3 cos tb + cos ta) /\n"
    "            (1 + c3 cos ta cos tb + J10 sin ta sin tb (c1 cos pa cos pb + c2 sin pa sin pb))\n"
    "  J10 = exp(-gt^2 / (2 sigma^2)), 1 with --weak-limit\n";

constexpr const char* kEvalFooter =
    "Output fields:\n"
    "  weak_value   projected control:\n"
    "  %s"
    "               traced control: cos ta\n"
    "               uncorrelated |+>|0>: cos ta / (1 + J10 sin ta cos pa)\n"
    "               GHZ/W: (c_a^2 X11 - s_a^2 X00) / (c_a^2 X11 + s_a^2 X00 + 2 c_a s_a Re(e^{i pa} X10) J10)\n"
    "  mean_p       <p> = p0 - gt <s_z>_W\n"
    "  probability  post-selection probability in the weak limit, e.g. <psi_a psi_b|rho|psi_a psi_b>\n"
    "  amplified    |<s_z>_W| > 1\n"
    "  divergent    denominator within 1e-12 of zero; weak_value and mean_p are null\n"
    "  oracle_mean_p  <p> from trapezoid quadrature of the shifted meter states (--oracle)\n";

std::string eval_footer() {
  char buf[2048];
  std::snprintf(buf, sizeof buf, kEvalFooter, kWeakValueFormula);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto path = wva::cli::config_path(args);
    if (!path.empty()) args = wva::cli::merge_config(args, wva::cli::read_config_file(path));
  } catch (const wva::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }

  CLI::App app{"Weak-value amplification with correlated control qubits"};
  app.set_version_flag("--version", std::string(wva::kVersion));
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "key = value config file; flags given here win")
      ->group("Config");

  const auto add_config = [&f](CLI::App* sub) {
    sub->add_option("--config", f.config, "key = value config file; flags given here win")
        ->group("Config");
  };

  // eval
  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "weak value, pointer shift and probability of one configuration");
  add_state_flags(eval, f, true);
  add_angle_flags(eval, f, true);
  add_meter_flags(eval, f);
  add_coupling_flags(eval, f);
  add_output_flags(eval, f, "json");
  eval->add_flag("--oracle", eval_opts.oracle, "also compute <p> by quadrature");
  add_config(eval);
  eval->footer(eval_footer());

  // figure
  FigureArgs fig_args;
  auto* figure = app.add_subcommand("figure", "datasets behind the figures: fig2 fig3 fig4 fig5 fig5_inset");
  figure->add_option("id", fig_args.id, "figure id")->required();
  figure->add_option_function<int>("--points", [&](int n) { fig_args.points = n; },
                                   "grid points per axis");
  angle_option(figure, "--theta-a", f.theta_a, "fig2 only: target polar angle (default pi/3)");
  number_option(figure, "--gt", f.gt, "fig5_inset only: coupling (default 1.5)");
  add_output_flags(figure, f, "csv");
  add_config(figure);
  figure->footer(std::string(
      "Columns:\n"
      "  fig2        theta_b, weak_value, probability, divergent, verdict\n"
      "              Bell |Phi+>, phi_a = pi, phi_b = 0, weak limit:\n"
      "              weak_value = (cos tb + cos ta) / (1 + cos ta cos tb - sin ta sin tb)\n"
      "              probability = (1 + cos ta cos tb - sin ta sin tb) / 4\n"
      "  fig3        c, weak_value_theta_b_pi_2, weak_value_theta_b_pi_4, concurrence, eof, quantum_discord\n"
      "              Werner (-c,-c,-c), ta = pi/10, phases 0, weak limit; weak values:\n") +
      kWeakValueFormula +
      "              concurrence = max(0, (3c - 1)/2); eof = h((1 + sqrt(1 - C^2))/2) bits\n"
      "              quantum_discord = mutual information - max classical correlation (bits)\n"
      "  fig4        theta_a, theta_b, weak_value, probability, divergent\n"
      "              c = (-0.95, -0.95, -0.9), phi_a = phi_b = pi/4, weak limit\n"
      "  fig5        gt, weak_value_sigma_0_5, weak_value_sigma_1_5\n"
      "              Bell, ta = tb = 1.4, phi_a = pi: (cos tb + cos ta) / (1 + cos ta cos tb - J10 sin ta sin tb)\n"
      "  fig5_inset  r, sigma, weak_value; sigma = exp(r)/2 at fixed gt\n");

  // sweep
  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "one- or two-parameter sweep of the projected weak value");
  add_state_flags(sweep, f, false);
  add_angle_flags(sweep, f, false);
  add_meter_flags(sweep, f);
  add_coupling_flags(sweep, f);
  add_output_flags(sweep, f, "csv");
  add_config(sweep);
  sweep->add_option("--param", sweep_args.param,
                    "theta_a phi_a theta_b phi_b c1 c2 c3 werner_c gt sigma r p0")
      ->required();
  sweep->add_option("--lo", sweep_args.lo, "lower end [angle syntax accepted]")->required();
  sweep->add_option("--hi", sweep_args.hi, "upper end")->required();
  sweep->add_option("--steps", sweep_args.steps, "number of points, >= 2 (default 101)");
  sweep->add_option("--param2", sweep_args.param2, "optional second axis");
  sweep->add_option("--lo2", sweep_args.lo2, "second axis lower end");
  sweep->add_option("--hi2", sweep_args.hi2, "second axis upper end");
  sweep->add_option("--steps2", sweep_args.steps2, "second axis points (default 101)");
  sweep->footer(std::string("Columns: swept parameters, then\n  weak_value\n") + kWeakValueFormula +
                "               (cos ta with --trace-b)\n"
                "  mean_p       p0 - gt weak_value\n"
                "  probability  (1 + c3 cos ta cos tb + sin ta sin tb (c1 cos pa cos pb + c2 sin pa sin pb)) / 4\n"
                "  denominator  denominator of weak_value\n"
                "  verdict      finite | divergent | indeterminate | invalid_state\n");

  // threshold
  ThresholdArgs thr_args;
  auto* threshold = app.add_subcommand("threshold", "coupling (or squeezing) at which |<s_z>_W| falls to 1");
  add_state_flags(threshold, f, false);
  add_angle_flags(threshold, f, false);
  add_coupling_flags(threshold, f);
  add_output_flags(threshold, f, "csv");
  add_config(threshold);
  threshold->add_option("--variable", thr_args.variable, "gt (default) or r")
      ->check(CLI::IsMember({"gt", "r"}));
  threshold->add_option("--sigma-lo", thr_args.sigma_lo, "smallest sigma (default 0.5)");
  threshold->add_option("--sigma-hi", thr_args.sigma_hi, "largest sigma (default 1.5)");
  threshold->add_option("--steps", thr_args.steps, "number of sigma values (default 3)");
  threshold->footer(
      "Columns (--variable gt): sigma, gt_c, ratio = gt_c / sigma, reason\n"
      "  gt_c solves |<s_z>_W(J10)| = 1 with J10 = exp(-gt^2/(2 sigma^2)); ratio is constant in sigma\n"
      "Columns (--variable r): gt, r_c, sigma_c = exp(r_c)/2, found, reason\n");

  // correlations
  auto* corr = app.add_subcommand("correlations", "entanglement and discord of a Bell-diagonal state");
  add_state_flags(corr, f, false);
  add_output_flags(corr, f, "json");
  add_config(corr);
  corr->footer(
      "Fields (bits):\n"
      "  concurrence            Wootters max(0, mu1 - mu2 - mu3 - mu4); BD: max(0, 2 lambda_max - 1)\n"
      "  eof                    h((1 + sqrt(1 - C^2)) / 2)\n"
      "  mutual_information     2 + sum_k lambda_k log2 lambda_k\n"
      "  classical_correlation  1 - h((1 + c)/2), c = max |c_j|\n"
      "  quantum_discord        mutual_information - classical_correlation\n");

  // oracle-check
  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle-check", "closed forms against brute-force quadrature on random configurations");
  oracle->add_option("--samples", oracle_args.samples, "number of random configurations (default 1000)");
  oracle->add_option("--seed", oracle_args.seed, "random seed (default 42)");
  oracle->add_option("--nodes", oracle_args.nodes, "trapezoid nodes, odd >= 101 (default 4001)");
  oracle->add_option("--half-width", oracle_args.half_width, "domain half-width in sigma, >= 8 (default 12)");
  oracle->add_option("--tolerance", oracle_args.tolerance, "max allowed |diff| (default 1e-8)");
  add_output_flags(oracle, f, "csv");
  add_config(oracle);
  oracle->footer(
      "Columns: configuration, then\n"
      "  closed_form  <p> = p0 - gt <s_z>_W from the closed forms\n"
      "  oracle       Tr[E <psi_a| Tr_M(rho(t) p) |psi_a>] / Tr[E <psi_a| Tr_M(rho(t)) |psi_a>] by quadrature\n"
      "  abs_diff     |closed_form - oracle|; pass when <= tolerance and the quadrature converged\n");

  // optimize
  OptimizeArgs opt_args;
  auto* optimize = app.add_subcommand("optimize", "maximize |<s_z>_W| subject to a minimum post-selection probability");
  add_state_flags(optimize, f, false);
  add_angle_flags(optimize, f, false);
  add_meter_flags(optimize, f);
  add_coupling_flags(optimize, f);
  add_output_flags(optimize, f, "json");
  add_config(optimize);
  optimize->add_option("--free", opt_args.free,
                       "free variable: name or name:lo:hi (theta_a phi_a theta_b phi_b c1 c2 c3)")
      ->delimiter(',');
  optimize->add_option("--p-min", opt_args.p_min, "minimum post-selection probability (default 0.1)");
  optimize->add_option("--grid-points", opt_args.grid_points, "scan points per variable (default 61)");
  optimize->add_option("--tolerance", opt_args.tolerance, "final step size (default 1e-6)");
  optimize->add_option("--trace-out", opt_args.trace_out, "write the full scan trace as CSV");
  optimize->footer(std::string("Objective |weak_value| with\n") + kWeakValueFormula +
                   "Constraint: probability = (1 + c3 cos ta cos tb + sin ta sin tb (...)) / 4 >= p-min\n");

  // sensitivity
  SensitivityArgs sens_args;
  auto* sens = app.add_subcommand("sensitivity", "response of the weak value to the control angle theta_b");
  add_state_flags(sens, f, false);
  add_angle_flags(sens, f, false);
  add_meter_flags(sens, f);
  add_coupling_flags(sens, f);
  add_output_flags(sens, f, "json");
  add_config(sens);
  sens->add_option("--shift", sens_args.shift, "theta_b offset for eta (default 1e-3)");
  sens->add_option("--detection-limit", sens_args.detection_limit,
                   "relative change of the output that can be detected (default 1e-2)");
  sens->footer(
      "Fields:\n"
      "  derivative            analytic d<s_z>_W/dtheta_b\n"
      "  derivative_fd         central difference with step 1e-6\n"
      "  eta                   (WV(tb + shift) - WV(tb)) / derivative\n"
      "  min_resolvable_angle  detection_limit |WV| / |derivative|\n"
      "  probability           (1 + c3 cos ta cos tb + sin ta sin tb (...)) / 4\n");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (f.format.empty()) {
      const bool csv = *figure || *sweep || *threshold || *oracle;
      f.format = csv ? "csv" : "json";
    }
    if (*eval) return run_eval(f, eval_opts);
    if (*figure) return run_figure(f, fig_args);
    if (*sweep) return run_sweep(f, sweep_args);
    if (*threshold) return run_threshold(f, thr_args);
    if (*corr) return run_correlations(f);
    if (*oracle) return run_oracle_check(f, oracle_args);
    if (*optimize) return run_optimize(f, opt_args);
    if (*sens) return run_sensitivity(f, sens_args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  } catch (const wva::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
