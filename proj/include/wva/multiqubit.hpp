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

// Two control qubits (b, e) attached to the target a through a GHZ or W
// initial state. After post-selecting a, the meter-traced denominator is
//
//   pref [ cos^2(ta/2) X11 J11 + sin^2(ta/2) X00 J00
//          + 2 cos(ta/2) sin(ta/2) Re(e^{i pa} X10) J10 ]
//
// where X11, X00, X10 are the reduced control-space operators <1|rho|1>_a,
// <0|rho|0>_a, <1|rho|0>_a after each control is projected or traced, and
// pref is 1/2 (GHZ) or 1/3 (W). The momentum numerator is the same
// expression with J replaced by K; the prefactor cancels in every weak
// value.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "wva/core.hpp"
#include "wva/meter.hpp"
#include "wva/parallel.hpp"
#include "wva/states.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

/// What happens to one control qubit: projected on a pure state or traced.
struct ControlAction {
  bool traced = true;
  PostSelection selection;

  static ControlAction project(const PostSelection& ps) { return {false, ps}; }
  static ControlAction trace() { return {true, PostSelection{}}; }
};

struct ThreeQubitScenario {
  ThreeQubitPure initial;
  PostSelection target;
  std::array<ControlAction, 2> controls{};  // {b, e}
};

/// Reduced coefficients of the three Pi-blocks of the post-selected state.
struct ThreeQubitTerms {
  double prefactor = 1.0;
  double ca2 = 0.0;  // cos^2(theta_a/2)
  double sa2 = 0.0;  // sin^2(theta_a/2)
  double x11 = 0.0;
  double x00 = 0.0;
  double coherence = 0.0;  // 2 cos(ta/2) sin(ta/2) Re(e^{i phi_a} X10)

  double denominator(double j10) const {
    return prefactor * (ca2 * x11 + sa2 * x00 + coherence * j10);
  }
  double momentum_numerator(const KJIntegrals& k) const {
    return prefactor * (ca2 * x11 * k.K11 + sa2 * x00 * k.K00 + coherence * k.K10);
  }
  /// Numerator of the sigma_z weak value, (p0 D - N) / gt.
  double sigma_numerator() const { return prefactor * (ca2 * x11 - sa2 * x00); }
};

namespace detail {

struct HalfAngles {
  double c, s, phi;
  explicit HalfAngles(const PostSelection& p)
      : c(std::cos(p.theta() / 2.0)), s(std::sin(p.theta() / 2.0)), phi(p.phi()) {}
};

inline ThreeQubitTerms ghz_terms(const ThreeQubitScenario& sc) {
  const HalfAngles a(sc.target);
  ThreeQubitTerms t;
  t.prefactor = 0.5;
  t.ca2 = a.c * a.c;
  t.sa2 = a.s * a.s;
  // |11><11|, |00><00| and |11><00| on (b, e).
  double x11 = 1.0, x00 = 1.0;
  bool coherent = true;
  cplx x10 = 1.0;
  for (const auto& act : sc.controls) {
    if (act.traced) {
      coherent = false;
      continue;
    }
    const HalfAngles q(act.selection);
    x11 *= q.c * q.c;
    x00 *= q.s * q.s;
    x10 *= q.c * q.s * std::polar(1.0, q.phi);
  }
  t.x11 = x11;
  t.x00 = x00;
  t.coherence = coherent ? 2.0 * a.c * a.s * (std::polar(1.0, a.phi) * x10).real() : 0.0;
  return t;
}

inline ThreeQubitTerms w_terms(const ThreeQubitScenario& sc) {
  const HalfAngles a(sc.target);
  ThreeQubitTerms t;
  t.prefactor = 1.0 / 3.0;
  t.ca2 = a.c * a.c;
  t.sa2 = a.s * a.s;
  // Blocks |00><00|, |s><s| and |00><s| on (b, e) with |s> = |01> + |10>.
  const auto& [b, e] = sc.controls;
  cplx x10 = 0.0;
  if (!b.traced && !e.traced) {
    const HalfAngles qb(b.selection), qe(e.selection);
    t.x11 = qb.s * qb.s * qe.s * qe.s;
    t.x00 = std::norm(qb.s * qe.c * std::polar(1.0, qb.phi) +
                      qb.c * qe.s * std::polar(1.0, qe.phi));
    x10 = qb.s * qe.s *
          (qb.s * qe.c * std::polar(1.0, -qe.phi) + qb.c * qe.s * std::polar(1.0, -qb.phi));
  } else if (b.traced && e.traced) {
    t.x11 = 1.0;
    t.x00 = 2.0;
  } else {
    const HalfAngles q(b.traced ? e.selection : b.selection);
    t.x11 = q.s * q.s;
    t.x00 = 1.0;
    x10 = q.s * q.c * std::polar(1.0, -q.phi);
  }
  t.coherence = 2.0 * a.c * a.s * (std::polar(1.0, a.phi) * x10).real();
  return t;
}

}  // namespace detail

inline ThreeQubitTerms three_qubit_terms(const ThreeQubitScenario& sc) {
  switch (sc.initial.tag) {
    case ThreeQubitTag::ghz:
      return detail::ghz_terms(sc);
    case ThreeQubitTag::w:
      return detail::w_terms(sc);
    case ThreeQubitTag::custom:
      break;
  }
  throw InvalidArgument("closed forms exist only for the GHZ and W states");
}

/// Weak value for any combination of projected/traced controls on GHZ or W.
/// The probability is the weak-limit success probability Tr[rho Pi_post].
inline WeakValueReport three_qubit_weak_value(const ThreeQubitScenario& sc,
                                              const MeterProfile& m,
                                              const CouplingSchedule& c) {
  const auto t = three_qubit_terms(sc);
  return detail::make_report(t.sigma_numerator(), t.denominator(meter_overlap(m, c)),
                             t.denominator(1.0), m, c);
}

/// <psi_be| tr_M(rho_psi_a) |psi_be> for GHZ with both controls projected:
/// (1/16)[8 c_a^2 c_b^2 c_e^2 + 8 s_a^2 s_b^2 s_e^2 + 2 sin ta sin tb sin te cos(phi_abe) J10]
/// with c_x = cos(theta_x/2), s_x = sin(theta_x/2).
inline double ghz_projected_denominator(double theta_a, double theta_b, double theta_e,
                                        double phi_abe, const MeterProfile& m,
                                        const CouplingSchedule& c) {
  const auto c2 = [](double t) { return std::pow(std::cos(t / 2.0), 2); };
  const auto s2 = [](double t) { return std::pow(std::sin(t / 2.0), 2); };
  return (8.0 * c2(theta_a) * c2(theta_b) * c2(theta_e) +
          8.0 * s2(theta_a) * s2(theta_b) * s2(theta_e) +
          2.0 * std::sin(theta_a) * std::sin(theta_b) * std::sin(theta_e) *
              std::cos(phi_abe) * meter_overlap(m, c)) /
         16.0;
}

inline WeakValueReport ghz_weak_value(const ThreeQubitScenario& sc, const MeterProfile& m,
                                      const CouplingSchedule& c) {
  detail::require(sc.initial.tag == ThreeQubitTag::ghz, "scenario is not a GHZ state");
  detail::require(!sc.controls[0].traced && !sc.controls[1].traced,
                  "both controls must be projected");
  return three_qubit_weak_value(sc, m, c);
}

/// W state, b traced and e projected:
/// (1/6)[2 c_a^2 s_e^2 J11 + 2 s_a^2 J00 + sin ta sin te cos(phi_a - phi_e) J10]
inline double w_trace_project_denominator(double theta_a, double theta_e, double phi_a,
                                          double phi_e, const MeterProfile& m,
                                          const CouplingSchedule& c) {
  const double ca = std::cos(theta_a / 2.0), sa = std::sin(theta_a / 2.0);
  const double se = std::sin(theta_e / 2.0);
  return (2.0 * ca * ca * se * se + 2.0 * sa * sa +
          std::sin(theta_a) * std::sin(theta_e) * std::cos(phi_a - phi_e) *
              meter_overlap(m, c)) /
         6.0;
}

inline WeakValueReport w_trace_project_weak_value(double theta_a, double theta_e,
                                                  double phi_a, double phi_e,
                                                  const MeterProfile& m,
                                                  const CouplingSchedule& c) {
  const ThreeQubitScenario sc{w_state(), PostSelection(theta_a, phi_a),
                              {ControlAction::trace(),
                               ControlAction::project(PostSelection(theta_e, phi_e))}};
  return three_qubit_weak_value(sc, m, c);
}

/// W state with both controls traced: (1 + sin^2(theta_a/2)) / 3 >= 1/3.
inline double w_traced_both_denominator(double theta_a) {
  const double sa = std::sin(theta_a / 2.0);
  return (1.0 + sa * sa) / 3.0;
}

// ---------------------------------------------------------------------------
// Supremum of the W trace/project weak value in the weak limit

struct AnglePoint {
  double theta_a = 0.0;
  double theta_e = 0.0;
  double delta_phi = 0.0;  // phi_a - phi_e
};

struct SupSearchResult {
  double grid_sup = 0.0;
  AnglePoint grid_argmax;
  double refined_sup = 0.0;
  AnglePoint refined_argmax;
  std::size_t evaluated = 0;
};

struct SupSearchGrid {
  int theta_a_points = 181;
  int theta_e_points = 181;
  int phi_points = 72;
  double refine_tolerance = 1e-6;
};

namespace detail {

inline std::optional<double> w_abs_weak_limit(const AnglePoint& p) {
  if (p.theta_a < 0.0 || p.theta_a > kPi || p.theta_e < 0.0 || p.theta_e > kPi)
    return std::nullopt;
  const auto r = w_trace_project_weak_value(p.theta_a, p.theta_e, p.delta_phi, 0.0,
                                            MeterProfile{}, CouplingSchedule::weak());
  if (!r.weak_value) return std::nullopt;
  return std::abs(*r.weak_value);
}

}  // namespace detail

/// Coarse grid over theta_a x theta_e in [0, pi] and phi_a - phi_e in
/// [0, 2 pi), then coordinate refinement from the grid argmax. Points with a
/// non-finite verdict are skipped; ties keep the lowest grid index.
inline SupSearchResult w_trace_project_sup(const SupSearchGrid& grid = {}) {
  detail::require(grid.theta_a_points >= 2 && grid.theta_e_points >= 2 && grid.phi_points >= 1,
                  "sup-search grid too small");
  const double da = kPi / (grid.theta_a_points - 1);
  const double de = kPi / (grid.theta_e_points - 1);
  const double dp = 2.0 * kPi / grid.phi_points;

  struct RowBest {
    double value = -1.0;
    AnglePoint at;
  };
  std::vector<RowBest> rows(static_cast<std::size_t>(grid.theta_a_points));
  parallel_for(rows.size(), [&](std::size_t i) {
    RowBest best;
    for (int j = 0; j < grid.theta_e_points; ++j)
      for (int k = 0; k < grid.phi_points; ++k) {
        const AnglePoint p{static_cast<double>(i) * da, j * de, k * dp};
        const auto v = detail::w_abs_weak_limit(p);
        if (v && *v > best.value) best = {*v, p};
      }
    rows[i] = best;
  });

  SupSearchResult out;
  out.evaluated = rows.size() * static_cast<std::size_t>(grid.theta_e_points) *
                  static_cast<std::size_t>(grid.phi_points);
  out.grid_sup = -1.0;
  for (const auto& r : rows)
    if (r.value > out.grid_sup) {
      out.grid_sup = r.value;
      out.grid_argmax = r.at;
    }

  AnglePoint cur = out.grid_argmax;
  double best = out.grid_sup;
  std::array<double, 3> step{da, de, dp};
  const auto coord = [](AnglePoint& p, int k) -> double& {
    return k == 0 ? p.theta_a : (k == 1 ? p.theta_e : p.delta_phi);
  };
  while (step[0] >= grid.refine_tolerance || step[1] >= grid.refine_tolerance ||
         step[2] >= grid.refine_tolerance) {
    bool moved = false;
    for (int k = 0; k < 3; ++k) {
      for (double dir : {1.0, -1.0}) {
        AnglePoint trial = cur;
        coord(trial, k) += dir * step[k];
        const auto v = detail::w_abs_weak_limit(trial);
        if (v && *v > best) {
          best = *v;
          cur = trial;
          moved = true;
          break;
        }
      }
    }
    if (!moved)
      for (auto& s : step) s /= 2.0;
  }
  out.refined_sup = best;
  out.refined_argmax = cur;
  return out;
}

// ---------------------------------------------------------------------------
// One versus two control qubits

struct EfficiencyRecord {
  WeakValueReport two_qubit;
  WeakValueReport three_qubit;
  double probability_ratio = 0.0;  // three-qubit / two-qubit
};

inline EfficiencyRecord efficiency_comparison(const ControlConfig& two,
                                              const ThreeQubitScenario& three) {
  EfficiencyRecord out;
  out.two_qubit = weak_value_projected(two);
  out.three_qubit = three_qubit_weak_value(three, two.meter, two.coupling);
  detail::require(out.two_qubit.probability > 0.0,
                  "two-qubit configuration has zero success probability");
  out.probability_ratio = out.three_qubit.probability / out.two_qubit.probability;
  return out;
}

/// Adjusts phi_e of a scenario with both controls projected so that
/// |WV| = target, by bisection on [phi_lo, phi_hi]. Requires |WV| - target
/// to change sign over the bracket.
inline std::optional<ThreeQubitScenario> tune_control_phase(ThreeQubitScenario sc,
                                                            double target, double phi_lo,
                                                            double phi_hi,
                                                            const MeterProfile& m,
                                                            const CouplingSchedule& c) {
  detail::require(!sc.controls[1].traced, "second control must be projected");
  const double theta_e = sc.controls[1].selection.theta();
  const auto f = [&](double phi) -> std::optional<double> {
    sc.controls[1] = ControlAction::project(PostSelection(theta_e, phi));
    const auto r = three_qubit_weak_value(sc, m, c);
    if (!r.weak_value) return std::nullopt;
    return std::abs(*r.weak_value) - target;
  };
  auto flo = f(phi_lo), fhi = f(phi_hi);
  if (!flo || !fhi) return std::nullopt;
  if (*flo == 0.0) {
    f(phi_lo);
    return sc;
  }
  if (*fhi == 0.0) {
    f(phi_hi);
    return sc;
  }
  if ((*flo > 0.0) == (*fhi > 0.0)) return std::nullopt;
  const bool lo_positive = *flo > 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (phi_lo + phi_hi);
    if (mid <= phi_lo || mid >= phi_hi) break;
    const auto fm = f(mid);
    if (!fm) return std::nullopt;
    if ((*fm > 0.0) == lo_positive) {
      phi_lo = mid;
    } else {
      phi_hi = mid;
    }
  }
  f(0.5 * (phi_lo + phi_hi));
  return sc;
}

}  // namespace wva
