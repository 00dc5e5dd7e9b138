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

// Walks the Bell example from the weak limit to a strong meter: weak value,
// where amplification is lost, and how much squeezing buys it back.

#include <cstdio>

#include "wva/wva.hpp"

int main() {
  using namespace wva;
  ControlConfig cfg{bell_phi_plus(), PostSelection(1.4, kPi), PostSelection(1.4, 0.0),
                    MeterProfile{}, CouplingSchedule::weak()};

  const auto weak = weak_value_projected(cfg);
  std::printf("weak limit: <s_z>_W = %.6f, probability = %.5f\n", *weak.weak_value,
              weak.probability);

  std::printf("\n%6s %12s %12s\n", "gt", "<s_z>_W", "<p>");
  for (double gt : {0.1, 0.2, 0.4, 0.8, 1.6}) {
    cfg.coupling = CouplingSchedule::make(gt);
    const auto r = weak_value_projected(cfg);
    std::printf("%6.2f %12.6f %12.6f\n", gt, *r.weak_value, *r.mean_p);
  }

  for (double sigma : {0.5, 1.0, 1.5}) {
    const auto t = amplification_threshold_gt(cfg, sigma);
    std::printf("sigma = %.1f: amplification lost at gt = %.6f\n", sigma, t.value);
  }
  std::printf("gt -> infinity: <s_z>_W = %.6f\n", *asymptotic_weak_value(cfg).weak_value);

  const auto r = amplification_threshold_r(cfg, 1.5);
  std::printf("at gt = 1.5 squeezing r > %.4f (sigma > %.4f) restores |<s_z>_W| > 1\n", r.value,
              sigma_from_squeeze({r.value}));

  // the same numbers without the closed form
  cfg.coupling = CouplingSchedule::make(0.4);
  const auto pr = make_oracle_problem(bd_density_matrix(cfg.state), cfg.target,
                                      ControlAction::project(cfg.control), cfg.meter, cfg.coupling);
  const auto q = oracle_mean_p(pr);
  std::printf("\ngt = 0.4: closed form <p> = %.12f, quadrature <p> = %.12f\n",
              *weak_value_projected(cfg).mean_p, q.mean_p);
}
