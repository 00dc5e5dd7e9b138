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

// Parameter sweeps, the figure datasets, threshold curves and the
// constrained amplification optimizer. Grid points are evaluated in parallel
// and written back by index, so every table is independent of scheduling.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wva/control.hpp"
#include "wva/core.hpp"
#include "wva/correlations.hpp"
#include "wva/meter.hpp"
#include "wva/parallel.hpp"
#include "wva/states.hpp"
#include "wva/table.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

/// lo + i (hi - lo) / (n - 1), with the last node pinned to hi.
inline double grid_node(double lo, double hi, int n, int i) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// ---------------------------------------------------------------------------
// Generic evaluation point

enum class SweepParam { theta_a, phi_a, theta_b, phi_b, c1, c2, c3, werner_c, gt, sigma, r, p0 };

inline constexpr std::array<std::string_view, 12> kSweepParamNames{
    "theta_a", "phi_a", "theta_b", "phi_b", "c1", "c2", "c3", "werner_c", "gt", "sigma", "r", "p0"};

inline std::string_view to_string(SweepParam p) {
  return kSweepParamNames[static_cast<std::size_t>(p)];
}

inline SweepParam parse_sweep_param(std::string_view name) {
  for (std::size_t i = 0; i < kSweepParamNames.size(); ++i)
    if (kSweepParamNames[i] == name) return static_cast<SweepParam>(i);
  throw InvalidArgument("unknown sweep parameter '" + std::string(name) + "'");
}

/// A single configuration with a traced or projected control.
struct EvalPoint {
  ControlConfig config{bell_phi_plus(), {}, {}, {}, {}};
  bool control_traced = false;
};

/// Assigns one parameter; angle and meter ranges are checked here, the BD
/// triple is checked at evaluation time.
inline void set_param(EvalPoint& pt, SweepParam p, double v) {
  auto& c = pt.config;
  switch (p) {
    case SweepParam::theta_a:
      c.target = PostSelection(v, c.target.phi());
      break;
    case SweepParam::phi_a:
      c.target = PostSelection(c.target.theta(), v);
      break;
    case SweepParam::theta_b:
      c.control = PostSelection(v, c.control.phi());
      break;
    case SweepParam::phi_b:
      c.control = PostSelection(c.control.theta(), v);
      break;
    case SweepParam::c1:
      c.state.c1 = v;
      break;
    case SweepParam::c2:
      c.state.c2 = v;
      break;
    case SweepParam::c3:
      c.state.c3 = v;
      break;
    case SweepParam::werner_c:
      c.state = werner(v);
      break;
    case SweepParam::gt:
      c.coupling = CouplingSchedule::make(v, c.coupling.weak_limit);
      break;
    case SweepParam::sigma:
      c.meter = MeterProfile::make(c.meter.p0, v);
      break;
    case SweepParam::r:
      c.meter = MeterProfile::make(c.meter.p0, sigma_from_squeeze({v}));
      break;
    case SweepParam::p0:
      c.meter = MeterProfile::make(v, c.meter.sigma);
      break;
  }
}

/// Weak value of the point. A traced control gives <s_z>_W = cos(theta_a)
/// with success probability 1/2 (the reduced target state of a BD state is
/// maximally mixed).
inline WeakValueReport evaluate_point(const EvalPoint& pt) {
  const auto& c = pt.config;
  if (pt.control_traced) {
    require_valid(c.state);
    return detail::make_report(std::cos(c.target.theta()), 1.0, 0.5, c.meter, c.coupling);
  }
  return weak_value_projected(c);
}

inline nlohmann::ordered_json to_json(const EvalPoint& pt) {
  const auto& c = pt.config;
  nlohmann::ordered_json j;
  j["state"] = {{"c1", c.state.c1}, {"c2", c.state.c2}, {"c3", c.state.c3}};
  j["theta_a"] = c.target.theta();
  j["phi_a"] = c.target.phi();
  if (pt.control_traced) {
    j["control"] = "traced";
  } else {
    j["theta_b"] = c.control.theta();
    j["phi_b"] = c.control.phi();
  }
  j["p0"] = c.meter.p0;
  j["sigma"] = c.meter.sigma;
  j["gt"] = c.coupling.gt;
  j["weak_limit"] = c.coupling.weak_limit;
  return j;
}

// ---------------------------------------------------------------------------
// Sweep plans

struct SweepAxis {
  SweepParam param = SweepParam::theta_b;
  double lo = 0.0;
  double hi = kPi;
  int steps = 181;
};

struct SweepPlan {
  std::vector<SweepAxis> axes;
  EvalPoint base;

  void validate() const {
    detail::require(!axes.empty() && axes.size() <= 2, "a sweep needs one or two axes");
    if (axes.size() == 2)
      detail::require(axes[0].param != axes[1].param, "sweep axes must differ");
    for (const auto& ax : axes) {
      const std::string name(to_string(ax.param));
      detail::require(std::isfinite(ax.lo) && std::isfinite(ax.hi) && ax.lo < ax.hi,
                      "empty range for " + name);
      detail::require(ax.steps >= 2, "need at least 2 steps for " + name);
      // every node must be a legal value for its parameter
      EvalPoint probe = base;
      set_param(probe, ax.param, ax.lo);
      set_param(probe, ax.param, ax.hi);
    }
    bool sweeps_state = false;
    for (const auto& ax : axes)
      sweeps_state = sweeps_state || ax.param == SweepParam::c1 || ax.param == SweepParam::c2 ||
                     ax.param == SweepParam::c3 || ax.param == SweepParam::werner_c;
    if (!sweeps_state) require_valid(base.config.state);
  }
};

/// Columns: the swept parameters, then weak_value, mean_p, probability,
/// denominator and verdict (finite, divergent, indeterminate, invalid_state).
inline Dataset run_sweep(const SweepPlan& plan) {
  plan.validate();
  const int n0 = plan.axes[0].steps;
  const int n1 = plan.axes.size() == 2 ? plan.axes[1].steps : 1;
  Dataset ds;
  for (const auto& ax : plan.axes) ds.table.columns.emplace_back(to_string(ax.param));
  for (const char* col : {"weak_value", "mean_p", "probability", "denominator", "verdict"})
    ds.table.columns.emplace_back(col);

  const std::size_t total = static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1);
  ds.table.rows.resize(total);
  parallel_for(total, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(n1));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(n1));
    EvalPoint pt = plan.base;
    std::vector<Cell> row;
    const auto& a0 = plan.axes[0];
    const double v0 = grid_node(a0.lo, a0.hi, n0, i);
    set_param(pt, a0.param, v0);
    row.emplace_back(v0);
    if (plan.axes.size() == 2) {
      const auto& a1 = plan.axes[1];
      const double v1 = grid_node(a1.lo, a1.hi, n1, j);
      set_param(pt, a1.param, v1);
      row.emplace_back(v1);
    }
    if (!validate_bd(pt.config.state).valid) {
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{},
                             std::monostate{}, std::string("invalid_state")});
    } else {
      const auto r = evaluate_point(pt);
      row.emplace_back(optional_cell(r.weak_value));
      row.emplace_back(optional_cell(r.mean_p));
      row.emplace_back(r.probability);
      row.emplace_back(r.denominator);
      row.emplace_back(std::string(to_string(r.verdict)));
    }
    ds.table.rows[idx] = std::move(row);
  });

  ds.metadata["kind"] = "sweep";
  ds.metadata["version"] = std::string(kVersion);
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const auto& ax : plan.axes)
    axes.push_back({{"param", std::string(to_string(ax.param))},
                    {"lo", ax.lo},
                    {"hi", ax.hi},
                    {"steps", ax.steps}});
  ds.metadata["axes"] = std::move(axes);
  ds.metadata["base"] = to_json(plan.base);
  return ds;
}

// ---------------------------------------------------------------------------
// Figure datasets

enum class FigureId { fig2, fig3, fig4, fig5, fig5_inset };

inline std::string_view to_string(FigureId f) {
  switch (f) {
    case FigureId::fig2:
      return "fig2";
    case FigureId::fig3:
      return "fig3";
    case FigureId::fig4:
      return "fig4";
    case FigureId::fig5:
      return "fig5";
    case FigureId::fig5_inset:
      return "fig5_inset";
  }
  return "unknown";
}

inline FigureId parse_figure_id(std::string_view s) {
  for (auto f : {FigureId::fig2, FigureId::fig3, FigureId::fig4, FigureId::fig5,
                 FigureId::fig5_inset})
    if (to_string(f) == s) return f;
  throw InvalidArgument("unknown figure id '" + std::string(s) +
                        "' (expected fig2, fig3, fig4, fig5 or fig5_inset)");
}

/// Overrides accepted by figure_dataset. theta_a applies to fig2 only, gt to
/// fig5_inset only; points sets the grid size along every axis.
struct FigureOptions {
  std::optional<double> theta_a;
  std::optional<int> points;
  std::optional<double> gt;
};

/// Default target angle of the Bell theta_b scan; it puts the divergence at
/// theta_b = 2 pi / 3.
inline constexpr double kFig2DefaultThetaA = kPi / 3.0;

/// Angles of the gt and squeezing scans.
inline ControlConfig fig5_config() {
  return {bell_phi_plus(), PostSelection(1.4, kPi), PostSelection(1.4, 0.0), MeterProfile{},
          CouplingSchedule{}};
}

namespace detail {

inline nlohmann::ordered_json figure_header(FigureId f) {
  nlohmann::ordered_json m;
  m["figure"] = std::string(to_string(f));
  m["version"] = std::string(kVersion);
  return m;
}

inline nlohmann::ordered_json state_json(const BellDiagonalState& s) {
  return {{"c1", s.c1}, {"c2", s.c2}, {"c3", s.c3}};
}

inline Cell threshold_cell(const ThresholdResult& t) {
  if (t.found) return t.value;
  return std::monostate{};
}

inline nlohmann::ordered_json threshold_json(const ThresholdResult& t) {
  if (t.found) return t.value;
  return nullptr;
}

inline Dataset fig2(const FigureOptions& o) {
  const double ta = o.theta_a.value_or(kFig2DefaultThetaA);
  const int n = o.points.value_or(181);
  const PostSelection a(ta, kPi);
  Dataset ds;
  ds.metadata = figure_header(FigureId::fig2);
  ds.metadata["state"] = "bell_phi_plus";
  ds.metadata["theta_a"] = ta;
  ds.metadata["theta_a_note"] =
      "theta_a is not fixed by the source figure; default pi/3 places the divergence at "
      "theta_b = 2 pi/3";
  ds.metadata["phi_a"] = kPi;
  ds.metadata["phi_b"] = 0.0;
  ds.metadata["weak_limit"] = true;
  ds.metadata["theta_b"] = {{"lo", 0.0}, {"hi", kPi}, {"points", n}};
  ds.table.columns = {"theta_b", "weak_value", "probability", "divergent", "verdict"};
  ds.table.rows.resize(static_cast<std::size_t>(n));
  parallel_for(ds.table.rows.size(), [&](std::size_t i) {
    const double tb = grid_node(0.0, kPi, n, static_cast<int>(i));
    const auto r = weak_value_bell(a, PostSelection(tb, 0.0), MeterProfile{},
                                   CouplingSchedule::weak());
    ds.table.rows[i] = {tb, optional_cell(r.weak_value), r.probability, r.divergent(),
                        std::string(to_string(r.verdict))};
  });
  return ds;
}

inline Dataset fig3(const FigureOptions& o) {
  const int n = o.points.value_or(101);
  const PostSelection a(kPi / 10.0, 0.0);
  const PostSelection b_half(kPi / 2.0, 0.0), b_quarter(kPi / 4.0, 0.0);
  Dataset ds;
  ds.metadata = figure_header(FigureId::fig3);
  ds.metadata["state"] = "werner (c1, c2, c3) = (-c, -c, -c)";
  ds.metadata["theta_a"] = kPi / 10.0;
  ds.metadata["phi_a"] = 0.0;
  ds.metadata["phi_b"] = 0.0;
  ds.metadata["weak_limit"] = true;
  ds.metadata["c"] = {{"lo", 0.0}, {"hi", 1.0}, {"points", n}};
  ds.metadata["units"] = {{"eof", "bits"}, {"quantum_discord", "bits"}};
  ds.table.columns = {"c",          "weak_value_theta_b_pi_2", "weak_value_theta_b_pi_4",
                      "concurrence", "eof",                     "quantum_discord"};
  ds.table.rows.resize(static_cast<std::size_t>(n));
  parallel_for(ds.table.rows.size(), [&](std::size_t i) {
    const double c = grid_node(0.0, 1.0, n, static_cast<int>(i));
    const auto s = werner(c);
    const auto w2 = weak_value_projected(s, a, b_half, MeterProfile{}, CouplingSchedule::weak());
    const auto w4 =
        weak_value_projected(s, a, b_quarter, MeterProfile{}, CouplingSchedule::weak());
    const auto corr = correlation_report(s);
    ds.table.rows[i] = {c, optional_cell(w2.weak_value), optional_cell(w4.weak_value),
                        corr.concurrence, corr.eof, corr.quantum_discord};
  });
  return ds;
}

inline Dataset fig4(const FigureOptions& o) {
  const int n = o.points.value_or(61);
  const BellDiagonalState s{-0.95, -0.95, -0.9};
  const double phase = kPi / 4.0;
  Dataset ds;
  ds.metadata = figure_header(FigureId::fig4);
  ds.metadata["state"] = state_json(s);
  ds.metadata["phi_a"] = phase;
  ds.metadata["phi_b"] = phase;
  ds.metadata["weak_limit"] = true;
  ds.metadata["theta_a"] = {{"lo", 0.0}, {"hi", kPi}, {"points", n}};
  ds.metadata["theta_b"] = {{"lo", 0.0}, {"hi", kPi}, {"points", n}};
  ds.metadata["note"] = "raw weak values; non-finite cells are flagged, not clipped";
  ds.table.columns = {"theta_a", "theta_b", "weak_value", "probability", "divergent"};
  const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  ds.table.rows.resize(total);
  parallel_for(total, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(n));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(n));
    const double ta = grid_node(0.0, kPi, n, i);
    const double tb = grid_node(0.0, kPi, n, j);
    const auto r = weak_value_projected(s, PostSelection(ta, phase), PostSelection(tb, phase),
                                        MeterProfile{}, CouplingSchedule::weak());
    ds.table.rows[idx] = {ta, tb, optional_cell(r.weak_value), r.probability, r.divergent()};
  });
  return ds;
}

inline Dataset fig5(const FigureOptions& o) {
  const int n = o.points.value_or(301);
  const auto cfg = fig5_config();
  const std::array<double, 2> sigmas{0.5, 1.5};
  Dataset ds;
  ds.metadata = figure_header(FigureId::fig5);
  ds.metadata["state"] = "bell_phi_plus";
  ds.metadata["theta_a"] = 1.4;
  ds.metadata["theta_b"] = 1.4;
  ds.metadata["phi_a"] = kPi;
  ds.metadata["phi_b"] = 0.0;
  ds.metadata["gt"] = {{"lo", 0.0}, {"hi", 3.0}, {"points", n}};
  ds.metadata["sigma"] = sigmas;
  ds.metadata["threshold_gt_sigma_0_5"] =
      threshold_json(amplification_threshold_gt(cfg, sigmas[0]));
  ds.metadata["threshold_gt_sigma_1_5"] =
      threshold_json(amplification_threshold_gt(cfg, sigmas[1]));
  const auto asym = asymptotic_weak_value(cfg);
  ds.metadata["asymptotic_weak_value"] =
      asym.weak_value ? nlohmann::ordered_json(*asym.weak_value) : nullptr;
  ds.table.columns = {"gt", "weak_value_sigma_0_5", "weak_value_sigma_1_5"};
  ds.table.rows.resize(static_cast<std::size_t>(n));
  parallel_for(ds.table.rows.size(), [&](std::size_t i) {
    const double gt = grid_node(0.0, 3.0, n, static_cast<int>(i));
    std::vector<Cell> row{gt};
    for (double sigma : sigmas) {
      ControlConfig c = cfg;
      c.meter = MeterProfile::make(0.0, sigma);
      c.coupling = CouplingSchedule::make(gt);
      row.push_back(optional_cell(weak_value_projected(c).weak_value));
    }
    ds.table.rows[i] = std::move(row);
  });
  return ds;
}

inline Dataset fig5_inset(const FigureOptions& o) {
  const int n = o.points.value_or(401);
  const double gt = o.gt.value_or(1.5);
  detail::require(std::isfinite(gt) && gt > 0.0, "fig5_inset needs gt > 0");
  const auto cfg = fig5_config();
  Dataset ds;
  ds.metadata = figure_header(FigureId::fig5_inset);
  ds.metadata["state"] = "bell_phi_plus";
  ds.metadata["theta_a"] = 1.4;
  ds.metadata["theta_b"] = 1.4;
  ds.metadata["phi_a"] = kPi;
  ds.metadata["phi_b"] = 0.0;
  ds.metadata["gt"] = gt;
  ds.metadata["sigma_of_r"] = "exp(r) / 2";
  ds.metadata["r"] = {{"lo", 0.0}, {"hi", 4.0}, {"points", n}};
  ds.metadata["threshold_r"] = threshold_json(amplification_threshold_r(cfg, gt));
  ds.table.columns = {"r", "sigma", "weak_value"};
  ds.table.rows.resize(static_cast<std::size_t>(n));
  parallel_for(ds.table.rows.size(), [&](std::size_t i) {
    const double r = grid_node(0.0, 4.0, n, static_cast<int>(i));
    ControlConfig c = cfg;
    c.meter = MeterProfile::make(0.0, sigma_from_squeeze({r}));
    c.coupling = CouplingSchedule::make(gt);
    ds.table.rows[i] = {r, c.meter.sigma, optional_cell(weak_value_projected(c).weak_value)};
  });
  return ds;
}

}  // namespace detail

inline Dataset figure_dataset(FigureId f, const FigureOptions& o = {}) {
  if (o.points) detail::require(*o.points >= 2, "points must be >= 2");
  if (o.theta_a) {
    detail::require(f == FigureId::fig2, "theta_a can only be overridden for fig2");
    PostSelection(*o.theta_a, 0.0);  // range check
  }
  if (o.gt) detail::require(f == FigureId::fig5_inset, "gt can only be overridden for fig5_inset");
  switch (f) {
    case FigureId::fig2:
      return detail::fig2(o);
    case FigureId::fig3:
      return detail::fig3(o);
    case FigureId::fig4:
      return detail::fig4(o);
    case FigureId::fig5:
      return detail::fig5(o);
    case FigureId::fig5_inset:
      return detail::fig5_inset(o);
  }
  throw InvalidArgument("unknown figure id");
}

// ---------------------------------------------------------------------------
// Threshold curves

struct ThresholdRow {
  double sigma = 0.0;
  ThresholdResult threshold;
};

struct ThresholdCurve {
  std::vector<ThresholdRow> rows;
  bool all_found = false;
  bool proportional = false;  // gt_c / sigma constant to 1e-9 relative
  double max_relative_deviation = 0.0;
  Dataset dataset;
};

inline constexpr double kProportionalityTolerance = 1e-9;

namespace detail {

template <typename ThresholdFn>
ThresholdCurve threshold_curve_impl(double sigma_lo, double sigma_hi, int steps,
                                    ThresholdFn&& fn, nlohmann::ordered_json meta) {
  detail::require(std::isfinite(sigma_lo) && sigma_lo > 0.0 && sigma_hi > sigma_lo,
                  "sigma range must satisfy 0 < lo < hi");
  detail::require(steps >= 2, "threshold curve needs at least 2 steps");
  ThresholdCurve out;
  out.rows.resize(static_cast<std::size_t>(steps));
  parallel_for(out.rows.size(), [&](std::size_t i) {
    const double s = grid_node(sigma_lo, sigma_hi, steps, static_cast<int>(i));
    out.rows[i] = {s, fn(s)};
  });
  out.all_found = true;
  for (const auto& r : out.rows) out.all_found = out.all_found && r.threshold.found;
  if (out.all_found) {
    const double ref = out.rows.front().threshold.value / out.rows.front().sigma;
    for (const auto& r : out.rows)
      out.max_relative_deviation =
          std::max(out.max_relative_deviation, std::abs(r.threshold.value / r.sigma - ref) / ref);
    out.proportional = out.max_relative_deviation <= kProportionalityTolerance;
  }
  auto& ds = out.dataset;
  ds.metadata = std::move(meta);
  ds.metadata["version"] = std::string(kVersion);
  ds.metadata["sigma"] = {{"lo", sigma_lo}, {"hi", sigma_hi}, {"points", steps}};
  ds.metadata["proportional"] = out.proportional;
  ds.metadata["max_relative_deviation"] = out.max_relative_deviation;
  ds.table.columns = {"sigma", "gt_c", "ratio", "reason"};
  for (const auto& r : out.rows) {
    const auto& t = r.threshold;
    ds.table.rows.push_back({r.sigma, threshold_cell(t),
                             t.found ? Cell{t.value / r.sigma} : Cell{std::monostate{}},
                             t.found ? Cell{std::monostate{}} : Cell{t.reason}});
  }
  return out;
}

}  // namespace detail

/// gt_c against sigma for a projected-control configuration.
inline ThresholdCurve threshold_curve(const ControlConfig& cfg, double sigma_lo, double sigma_hi,
                                      int steps) {
  nlohmann::ordered_json meta;
  meta["kind"] = "threshold_curve";
  meta["config"] = to_json(EvalPoint{cfg, false});
  return detail::threshold_curve_impl(
      sigma_lo, sigma_hi, steps,
      [&](double s) { return amplification_threshold_gt(cfg, s); }, std::move(meta));
}

/// Same for the uncorrelated single-qubit configuration.
inline ThresholdCurve threshold_curve_uncorrelated(const PostSelection& a, double sigma_lo,
                                                   double sigma_hi, int steps) {
  nlohmann::ordered_json meta;
  meta["kind"] = "threshold_curve_uncorrelated";
  meta["theta_a"] = a.theta();
  meta["phi_a"] = a.phi();
  return detail::threshold_curve_impl(
      sigma_lo, sigma_hi, steps,
      [&](double s) { return amplification_threshold_gt_uncorrelated(a, s); }, std::move(meta));
}

// ---------------------------------------------------------------------------
// Constrained optimization of |<s_z>_W|

enum class OptVar { theta_a, phi_a, theta_b, phi_b, c1, c2, c3 };

inline constexpr std::array<std::string_view, 7> kOptVarNames{"theta_a", "phi_a", "theta_b",
                                                               "phi_b",   "c1",    "c2",
                                                               "c3"};

inline std::string_view to_string(OptVar v) { return kOptVarNames[static_cast<std::size_t>(v)]; }

inline OptVar parse_opt_var(std::string_view s) {
  for (std::size_t i = 0; i < kOptVarNames.size(); ++i)
    if (kOptVarNames[i] == s) return static_cast<OptVar>(i);
  throw InvalidArgument("unknown optimization variable '" + std::string(s) + "'");
}

struct FreeVariable {
  OptVar var = OptVar::theta_a;
  double lo = 0.0;
  double hi = kPi;

  static FreeVariable full(OptVar v) {
    switch (v) {
      case OptVar::theta_a:
      case OptVar::theta_b:
        return {v, 0.0, kPi};
      case OptVar::phi_a:
      case OptVar::phi_b:
        return {v, 0.0, 2.0 * kPi};
      default:
        return {v, -1.0, 1.0};
    }
  }
};

struct OptimizationProblem {
  ControlConfig base{bell_phi_plus(), {}, {}, {}, CouplingSchedule::weak()};
  std::vector<FreeVariable> free;  // scanned in this (lexicographic) order
  double p_min = 0.1;
  int grid_points = 61;
  double tolerance = 1e-6;

  void validate() const {
    detail::require(p_min > 0.0 && p_min <= 1.0, "p_min must lie in (0, 1]");
    detail::require(grid_points >= 2, "grid needs at least 2 points per dimension");
    detail::require(tolerance > 0.0, "tolerance must be positive");
    std::array<bool, 7> seen{};
    for (const auto& f : free) {
      const auto k = static_cast<std::size_t>(f.var);
      detail::require(!seen[k], "variable listed twice: " + std::string(to_string(f.var)));
      seen[k] = true;
      const auto full = FreeVariable::full(f.var);
      detail::require(f.lo < f.hi && f.lo >= full.lo && f.hi <= full.hi,
                      "bounds for " + std::string(to_string(f.var)) + " outside [" +
                          std::to_string(full.lo) + ", " + std::to_string(full.hi) + "]");
    }
    double points = 1.0;
    for (std::size_t i = 0; i < free.size(); ++i) points *= grid_points;
    detail::require(points <= 4.0e6, "scan grid exceeds 4e6 points; lower grid_points");
  }
};

struct ScanEntry {
  std::vector<double> x;
  std::optional<double> objective;  // |WV| when finite
  double probability = 0.0;
  bool valid_state = true;
  bool feasible = false;
};

struct OptimizationResult {
  bool feasible = false;
  std::string verdict;  // "optimal" or "infeasible"
  std::vector<double> x;
  ControlConfig config;
  WeakValueReport report;
  double objective = 0.0;
  ScanEntry grid_best;
  std::vector<ScanEntry> trace;
  int refinement_moves = 0;
};

namespace detail {

inline void assign(ControlConfig& c, OptVar v, double x) {
  EvalPoint pt{c, false};
  static constexpr std::array<SweepParam, 7> kMap{SweepParam::theta_a, SweepParam::phi_a,
                                                  SweepParam::theta_b, SweepParam::phi_b,
                                                  SweepParam::c1,      SweepParam::c2,
                                                  SweepParam::c3};
  set_param(pt, kMap[static_cast<std::size_t>(v)], x);
  c = pt.config;
}

inline ScanEntry score(const OptimizationProblem& pr, const std::vector<double>& x,
                       WeakValueReport* report = nullptr) {
  ControlConfig c = pr.base;
  for (std::size_t k = 0; k < x.size(); ++k) assign(c, pr.free[k].var, x[k]);
  ScanEntry e;
  e.x = x;
  e.valid_state = validate_bd(c.state).valid;
  if (!e.valid_state) return e;
  const auto r = weak_value_projected(c);
  e.probability = r.probability;
  if (r.weak_value) e.objective = std::abs(*r.weak_value);
  e.feasible = e.objective.has_value() && r.probability >= pr.p_min;
  if (report) *report = r;
  return e;
}

// Strictly better, with a relative tie band so mirror-symmetric optima keep
// the earlier point.
inline bool improves(const ScanEntry& cand, const ScanEntry& best) {
  if (!cand.feasible) return false;
  if (!best.feasible) return true;
  return *cand.objective > *best.objective * (1.0 + 1e-12);
}

}  // namespace detail

/// Grid scan over the free variables followed by coordinate descent from the
/// best feasible grid point. Never returns an infeasible point.
inline OptimizationResult optimize_amplification(const OptimizationProblem& pr) {
  pr.validate();
  OptimizationResult out;
  const std::size_t dims = pr.free.size();
  const int n = pr.grid_points;

  std::size_t total = 1;
  for (std::size_t k = 0; k < dims; ++k) total *= static_cast<std::size_t>(n);
  out.trace.resize(total);
  parallel_for(total, [&](std::size_t idx) {
    std::vector<double> x(dims);
    std::size_t rest = idx;
    for (std::size_t k = dims; k-- > 0;) {
      const int i = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      x[k] = grid_node(pr.free[k].lo, pr.free[k].hi, n, i);
    }
    out.trace[idx] = detail::score(pr, x);
  });

  ScanEntry best;
  for (const auto& e : out.trace)
    if (detail::improves(e, best)) best = e;
  out.grid_best = best;
  if (!best.feasible) {
    out.verdict = "infeasible";
    out.config = pr.base;
    if (dims == 0) detail::score(pr, {}, &out.report);
    return out;
  }

  std::vector<double> step(dims);
  for (std::size_t k = 0; k < dims; ++k) step[k] = (pr.free[k].hi - pr.free[k].lo) / (n - 1);
  const auto coarse = [&] {
    for (double s : step)
      if (s >= pr.tolerance) return true;
    return false;
  };
  while (dims > 0 && coarse()) {
    bool moved = false;
    for (std::size_t k = 0; k < dims; ++k)
      for (double dir : {1.0, -1.0}) {
        auto x = best.x;
        x[k] = std::clamp(x[k] + dir * step[k], pr.free[k].lo, pr.free[k].hi);
        if (x[k] == best.x[k]) continue;
        const auto cand = detail::score(pr, x);
        if (detail::improves(cand, best)) {
          best = cand;
          moved = true;
          ++out.refinement_moves;
          break;
        }
      }
    if (!moved)
      for (auto& s : step) s /= 2.0;
  }

  out.feasible = true;
  out.verdict = "optimal";
  out.x = best.x;
  out.config = pr.base;
  for (std::size_t k = 0; k < dims; ++k) detail::assign(out.config, pr.free[k].var, best.x[k]);
  detail::score(pr, best.x, &out.report);
  out.objective = *best.objective;
  return out;
}

}  // namespace wva
