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

// Control knobs on top of the projected weak value: amplification
// thresholds in gt and in the squeezing parameter, the strong-coupling
// asymptote, and the sensitivity of the output to the control angle.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "wva/core.hpp"
#include "wva/meter.hpp"
#include "wva/states.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

// ---------------------------------------------------------------------------
// Thresholds

struct ThresholdResult {
  bool found = false;
  double value = 0.0;  // gt_c, or r_c for the squeezing threshold
  double weak_value_at_start = 0.0;
  std::string reason;  // set when !found
};

namespace detail {

// Plain bisection on a bracket where f(lo) > 0 >= f(hi); runs until the
// midpoint stops moving.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// |WV| - 1 as a function of the meter overlap J10; divergent points count as
// amplified.
using WeakValueOfOverlap = std::function<WeakValueReport(double)>;

inline double excess(const WeakValueReport& r) {
  if (r.verdict == Verdict::divergent) return 1.0;
  if (r.verdict == Verdict::indeterminate) return -1.0;
  return std::abs(*r.weak_value) - 1.0;
}

inline ThresholdResult threshold_in_gt(double sigma, const WeakValueOfOverlap& wv) {
  ThresholdResult out;
  const auto at = [&](double gt) { return wv(std::exp(-0.5 * (gt / sigma) * (gt / sigma))); };
  const auto start = at(0.0);
  out.weak_value_at_start = start.weak_value.value_or(INFINITY);
  if (excess(start) <= 0.0) {
    out.reason = "no amplification at gt = 0";
    return out;
  }
  const double hi = 20.0 * sigma;
  if (excess(at(hi)) > 0.0) {
    out.reason = "amplification persists up to gt = 20 sigma";
    return out;
  }
  out.found = true;
  out.value = bisect([&](double gt) { return excess(at(gt)); }, 0.0, hi);
  return out;
}

}  // namespace detail

/// Smallest gt > 0 at which |<s_z>_W| drops to 1 for a meter of width sigma,
/// found by bisection over (0, 20 sigma]. The weak value is monotone in the
/// meter overlap on that interval.
inline ThresholdResult amplification_threshold_gt(const ControlConfig& cfg, double sigma) {
  require_valid(cfg.state);
  detail::require(sigma > 0.0, "sigma must be positive");
  const auto t = detail::projected_terms(cfg.state, cfg.target, cfg.control);
  const MeterProfile m{cfg.meter.p0, sigma};
  return detail::threshold_in_gt(sigma, [&](double j10) {
    return detail::make_report(t.numerator, t.denominator(j10), t.denominator(1.0) / 4.0,
                               m, CouplingSchedule{});
  });
}

/// Same threshold for the uncorrelated (single-qubit) configuration.
inline ThresholdResult amplification_threshold_gt_uncorrelated(const PostSelection& a,
                                                               double sigma) {
  detail::require(sigma > 0.0, "sigma must be positive");
  const double num = std::cos(a.theta());
  const double inter = std::sin(a.theta()) * std::cos(a.phi());
  return detail::threshold_in_gt(sigma, [&](double j10) {
    return detail::make_report(num, 1.0 + j10 * inter, (1.0 + inter) / 2.0,
                               MeterProfile{}, CouplingSchedule{});
  });
}

/// Smallest squeezing r >= 0 at which |<s_z>_W| reaches 1 for fixed gt,
/// with sigma = e^r / 2.
inline ThresholdResult amplification_threshold_r(const ControlConfig& cfg, double gt) {
  require_valid(cfg.state);
  detail::require(gt > 0.0, "gt must be positive for a squeezing threshold");
  const auto t = detail::projected_terms(cfg.state, cfg.target, cfg.control);
  const auto at = [&](double r) {
    const double sigma = sigma_from_squeeze({r});
    const double j10 = std::exp(-0.5 * (gt / sigma) * (gt / sigma));
    return detail::make_report(t.numerator, t.denominator(j10), t.denominator(1.0) / 4.0,
                               MeterProfile{0.0, sigma}, CouplingSchedule{gt, false});
  };
  ThresholdResult out;
  const auto start = at(0.0);
  out.weak_value_at_start = start.weak_value.value_or(INFINITY);
  if (detail::excess(start) > 0.0) {
    out.reason = "already amplified at r = 0";
    return out;
  }
  // sigma = e^r/2 > 1e6 gt makes the meter overlap 1 to double precision.
  const double hi = std::log(2.0e6 * gt) + 1.0;
  if (detail::excess(at(hi)) <= 0.0) {
    out.reason = "no amplification even in the weak limit";
    return out;
  }
  out.found = true;
  out.value = detail::bisect([&](double r) { return -detail::excess(at(r)); }, 0.0, hi);
  return out;
}

/// gt/sigma -> infinity: the interference term of the denominator vanishes.
inline WeakValueReport asymptotic_weak_value(const ControlConfig& cfg) {
  require_valid(cfg.state);
  const auto t = detail::projected_terms(cfg.state, cfg.target, cfg.control);
  return detail::make_report(t.numerator, t.base, t.denominator(1.0) / 4.0, cfg.meter,
                             cfg.coupling);
}

// ---------------------------------------------------------------------------
// Sensitivity to the control angle theta_b

/// Analytic d<s_z>_W / d theta_b of the projected weak value.
inline std::optional<double> weak_value_derivative_theta_b(const ControlConfig& cfg) {
  require_valid(cfg.state);
  const auto& s = cfg.state;
  const double ta = cfg.target.theta(), pa = cfg.target.phi();
  const double tb = cfg.control.theta(), pb = cfg.control.phi();
  const double j10 = meter_overlap(cfg.meter, cfg.coupling);
  const auto t = detail::projected_terms(s, ta, pa, tb, pb);
  const double den = t.denominator(j10);
  if (std::abs(den) <= kDivergenceCutoff) return std::nullopt;
  const double phase = s.c1 * std::cos(pa) * std::cos(pb) + s.c2 * std::sin(pa) * std::sin(pb);
  const double dnum = -s.c3 * std::sin(tb);
  const double dden = -s.c3 * std::cos(ta) * std::sin(tb) +
                      j10 * std::sin(ta) * std::cos(tb) * phase;
  return (dnum * den - t.numerator * dden) / (den * den);
}

namespace detail {

// Weak value at an arbitrary (possibly out-of-range) theta_b.
inline std::optional<double> weak_value_at_theta_b(const ControlConfig& cfg, double tb) {
  const auto t = projected_terms(cfg.state, cfg.target.theta(), cfg.target.phi(), tb,
                                 cfg.control.phi());
  const double den = t.denominator(meter_overlap(cfg.meter, cfg.coupling));
  if (classify_ratio(t.numerator, den) != Verdict::finite) return std::nullopt;
  return t.numerator / den;
}

}  // namespace detail

inline constexpr double kFiniteDifferenceStep = 1e-6;
inline constexpr double kDerivativeAgreement = 1e-6;

enum class SensitivityStatus { ok, zero_derivative, divergent };

inline std::string_view to_string(SensitivityStatus s) {
  switch (s) {
    case SensitivityStatus::ok:
      return "ok";
    case SensitivityStatus::zero_derivative:
      return "zero_derivative";
    case SensitivityStatus::divergent:
      return "divergent";
  }
  return "unknown";
}

/// Reading of the sensitivity ratio used by this library; echoed in outputs.
inline constexpr std::string_view kSensitivityReading =
    "eta = (WV(theta_b0 + d) - WV(theta_b0)) / dWV/dtheta_b at theta_b0, "
    "derivative of the projected weak value";
inline constexpr std::string_view kDetectionLimitReading =
    "detection limit is relative to |WV(theta_b0)|";

struct SensitivityResult {
  SensitivityStatus status = SensitivityStatus::ok;
  double eta = 0.0;
  double weak_value = 0.0;          // at theta_b0
  double weak_value_shifted = 0.0;  // at theta_b0 + delta
  double derivative = 0.0;          // analytic
  double derivative_fd = 0.0;       // central difference, step 1e-6
  bool derivative_agrees = false;
  double probability = 0.0;
};

namespace detail {

inline SensitivityResult derivative_record(const ControlConfig& cfg) {
  SensitivityResult out;
  out.probability = postselection_probability(cfg.state, cfg.target, cfg.control);
  const double tb = cfg.control.theta();
  const auto wv0 = weak_value_at_theta_b(cfg, tb);
  const auto d = weak_value_derivative_theta_b(cfg);
  const auto plus = weak_value_at_theta_b(cfg, tb + kFiniteDifferenceStep);
  const auto minus = weak_value_at_theta_b(cfg, tb - kFiniteDifferenceStep);
  if (!wv0 || !d || !plus || !minus) {
    out.status = SensitivityStatus::divergent;
    return out;
  }
  out.weak_value = *wv0;
  out.derivative = *d;
  out.derivative_fd = (*plus - *minus) / (2.0 * kFiniteDifferenceStep);
  out.derivative_agrees = std::abs(out.derivative - out.derivative_fd) <=
                          kDerivativeAgreement * std::max(std::abs(out.derivative), 1.0);
  if (std::abs(out.derivative) <= kDivergenceCutoff) out.status = SensitivityStatus::zero_derivative;
  return out;
}

}  // namespace detail

/// eta = (WV(theta_b0 + delta) - WV(theta_b0)) / WV'(theta_b0): to first
/// order the angular offset inferred from the change in output.
inline SensitivityResult sensitivity_eta(const ControlConfig& cfg, double delta_theta_b) {
  auto out = detail::derivative_record(cfg);
  if (out.status != SensitivityStatus::ok) return out;
  const auto shifted =
      detail::weak_value_at_theta_b(cfg, cfg.control.theta() + delta_theta_b);
  if (!shifted) {
    out.status = SensitivityStatus::divergent;
    return out;
  }
  out.weak_value_shifted = *shifted;
  out.eta = (*shifted - out.weak_value) / out.derivative;
  return out;
}

struct ResolutionResult {
  SensitivityStatus status = SensitivityStatus::ok;
  double min_angle = 0.0;  // radians
  double weak_value = 0.0;
  double derivative = 0.0;
  double probability = 0.0;
};

/// Smallest theta_b offset whose output change reaches the relative detection
/// limit: limit * |WV(theta_b0)| / |WV'(theta_b0)|.
inline ResolutionResult resolvable_angle(const ControlConfig& cfg,
                                         double relative_detection_limit) {
  detail::require(relative_detection_limit >= 0.0, "detection limit must be >= 0");
  const auto d = detail::derivative_record(cfg);
  ResolutionResult out;
  out.status = d.status;
  out.weak_value = d.weak_value;
  out.derivative = d.derivative;
  out.probability = d.probability;
  if (d.status == SensitivityStatus::ok)
    out.min_angle = relative_detection_limit * std::abs(d.weak_value) / std::abs(d.derivative);
  return out;
}

}  // namespace wva
