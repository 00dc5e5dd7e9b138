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

// Gaussian meter in momentum space (hbar = 1). The coupling H = g sigma_3 x
// translates momentum eigenstates, |p> -> |p -/+ gt>, so only gt and the
// ratio gt/sigma enter any result.

#pragma once

#include <cmath>
#include <string>

#include "wva/core.hpp"

namespace wva {

struct MeterProfile {
  double p0 = 0.0;
  double sigma = 0.5;

  static MeterProfile make(double p0, double sigma) {
    detail::require(std::isfinite(p0), "p0 must be finite");
    detail::require(std::isfinite(sigma) && sigma > 0.0,
                    "sigma must be positive, got " + std::to_string(sigma));
    return {p0, sigma};
  }
};

struct SqueezeSpec {
  double r = 0.0;
};

/// sigma^2 = e^{2r}/4, i.e. sigma = e^r / 2; r = 0 is the coherent meter.
inline double sigma_from_squeeze(SqueezeSpec s) {
  detail::require(std::isfinite(s.r) && s.r >= 0.0,
                  "squeezing parameter must be >= 0, got " + std::to_string(s.r));
  return std::exp(s.r) / 2.0;
}

inline double squeeze_from_sigma(double sigma) {
  detail::require(sigma >= 0.5, "sigma below 1/2 is not reachable by squeezing");
  return std::log(2.0 * sigma);
}

/// phi(p) = (2 pi sigma^2)^{-1/4} exp(-(p - p0)^2 / (4 sigma^2))
inline double wavefunction(const MeterProfile& m, double p) {
  const double d = p - m.p0;
  return std::pow(2.0 * kPi * m.sigma * m.sigma, -0.25) *
         std::exp(-d * d / (4.0 * m.sigma * m.sigma));
}

/// Accumulated coupling gt (g times interaction time). `weak_limit` selects
/// the gt/sigma -> 0 limit of the meter overlap exactly while keeping gt as
/// the scale of the pointer displacement.
struct CouplingSchedule {
  double gt = 0.0;
  bool weak_limit = false;

  static CouplingSchedule make(double gt, bool weak_limit = false) {
    detail::require(std::isfinite(gt) && gt >= 0.0,
                    "gt must be >= 0, got " + std::to_string(gt));
    return {gt, weak_limit};
  }

  static CouplingSchedule weak(double gt = 0.0) { return make(gt, true); }
};

/// Overlap of the two translated meter states, exp(-g^2 t^2 / (2 sigma^2)).
inline double meter_overlap(const MeterProfile& m, const CouplingSchedule& c) {
  if (c.weak_limit) return 1.0;
  const double x = c.gt / m.sigma;
  return std::exp(-0.5 * x * x);
}

}  // namespace wva
