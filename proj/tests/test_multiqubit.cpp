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

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "brute_force.hpp"
#include "reference_values.hpp"
#include "wva/multiqubit.hpp"

namespace {

using wva::ControlAction;
using wva::CouplingSchedule;
using wva::kPi;
using wva::MeterProfile;
using wva::PostSelection;
using wva::ThreeQubitScenario;

const MeterProfile kMeter{0.0, 0.5};
const CouplingSchedule kWeak = CouplingSchedule::weak();

bf::Mat effect(const ControlAction& a) {
  if (a.traced) return bf::Mat::Identity(2, 2);
  return bf::projector(bf::ket(a.selection.theta(), a.selection.phi()));
}

std::array<ControlAction, 2> actions(int mask, const PostSelection& b, const PostSelection& e) {
  return {mask & 1 ? ControlAction::trace() : ControlAction::project(b),
          mask & 2 ? ControlAction::trace() : ControlAction::project(e)};
}

double printed_ghz(double ta, double tb, double te, double phi, double j11, double j00, double j10) {
  const auto c2 = [](double t) { return std::pow(std::cos(t / 2), 2); };
  const auto s2 = [](double t) { return std::pow(std::sin(t / 2), 2); };
  return (8 * c2(ta) * c2(tb) * c2(te) * j11 + 8 * s2(ta) * s2(tb) * s2(te) * j00 +
          2 * std::sin(ta) * std::sin(tb) * std::sin(te) * std::cos(phi) * j10) /
         16;
}

double printed_w(double ta, double te, double dphi, double j11, double j00, double j10) {
  const double ca = std::cos(ta / 2), sa = std::sin(ta / 2), se = std::sin(te / 2);
  return (2 * ca * ca * se * se * j11 + 2 * sa * sa * j00 + std::sin(ta) * std::sin(te) * std::cos(dphi) * j10) / 6;
}

// Closed forms for every control action against explicit 8x8 matrices.
TEST(ThreeQubit, ClosedFormsMatchDensityMatrices) {
  for (const auto& initial : {wva::ghz_state(), wva::w_state()}) {
    const bf::Mat rho = initial.tag == wva::ThreeQubitTag::ghz ? bf::ghz() : bf::w();
    for (int mask = 0; mask < 4; ++mask)
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          for (int k = 0; k < 5; ++k) {
            const PostSelection a((i + 0.3) * kPi / 5, 0.9 * i + 0.2);
            const PostSelection b((j + 0.6) * kPi / 5, 1.3 * j);
            const PostSelection e((k + 0.1) * kPi / 5, 2.1 * k + 0.5);
            const ThreeQubitScenario sc{initial, a, actions(mask, b, e)};
            const auto lib = wva::three_qubit_weak_value(sc, kMeter, kWeak);
            const auto ref = bf::weak_limit(rho, bf::ket(a.theta(), a.phi()),
                                            bf::kron(effect(sc.controls[0]), effect(sc.controls[1])));
            EXPECT_NEAR(lib.probability, ref.probability, 1e-14);
            if (ref.probability < 1e-8) continue;
            ASSERT_TRUE(lib.weak_value);
            EXPECT_NEAR(*lib.weak_value, ref.weak_value, 1e-10 * std::max(1.0, std::abs(ref.weak_value)));
          }
  }
}

TEST(ThreeQubit, FrozenFiniteCouplingValues) {
  const PostSelection a(1.1, 0.4), b(2.0, 1.3), e(0.7, 5.0);
  const MeterProfile m{0.0, 0.8};
  const CouplingSchedule c{0.35, false};
  const auto ghz = wva::three_qubit_weak_value({wva::ghz_state(), a, actions(0, b, e)}, m, c);
  const auto w = wva::three_qubit_weak_value({wva::w_state(), a, actions(0, b, e)}, m, c);
  const auto wt = wva::three_qubit_weak_value({wva::w_state(), a, actions(1, b, e)}, m, c);
  EXPECT_NEAR(*ghz.mean_p, wva::ref::kGhzProjectedMeanP, 1e-10);
  EXPECT_NEAR(*w.mean_p, wva::ref::kWProjectedMeanP, 1e-10);
  EXPECT_NEAR(*wt.mean_p, wva::ref::kWTracedProjectedMeanP, 1e-10);
}

TEST(GhzDenominator, Examples) {
  EXPECT_NEAR(wva::ghz_projected_denominator(kPi / 2, kPi / 2, kPi / 2, 3 * kPi, kMeter, kWeak), 0.0, 1e-15);
  EXPECT_NEAR(wva::ghz_projected_denominator(0, 0, 0, 0.7, kMeter, kWeak), 0.5, 1e-15);
  EXPECT_NEAR(wva::ghz_projected_denominator(kPi / 2, kPi / 2, kPi / 2, 3 * kPi, kMeter, {60.0, false}),
              0.125, 1e-15);
}

// Printed 1/16 and 1/6 forms against the library's reduced terms, and the
// weak value rebuilt from them with the K-substitution.
TEST(ThreeQubit, PrintedFormsAgreeAndPrefactorCancels) {
  const MeterProfile m{0.6, 0.7};
  for (double gt : {0.0, 0.2, 0.9})
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const CouplingSchedule c{gt, false};
        const auto kj = wva::kj_integrals(m, c);
        const double ta = (i + 0.5) * kPi / 6, tb = (j + 0.5) * kPi / 6, te = (i + j + 0.5) * kPi / 13;
        const double pa = 0.3 * i, pb = 0.5 * j, pe = 1.7;
        const ThreeQubitScenario ghz{wva::ghz_state(), PostSelection(ta, pa),
                                     actions(0, PostSelection(tb, pb), PostSelection(te, pe))};
        const double d = wva::ghz_projected_denominator(ta, tb, te, pa + pb + pe, m, c);
        EXPECT_NEAR(d, printed_ghz(ta, tb, te, pa + pb + pe, 1, 1, kj.J10), 1e-15);
        EXPECT_NEAR(d, wva::three_qubit_terms(ghz).denominator(kj.J10), 1e-15);
        if (gt > 0 && std::abs(d) > 1e-6) {
          const double n = printed_ghz(ta, tb, te, pa + pb + pe, kj.K11, kj.K00, kj.K10);
          const auto r = wva::three_qubit_weak_value(ghz, m, c);
          EXPECT_NEAR(*r.weak_value, (m.p0 * d - n) / (gt * d), 1e-9 * std::max(1.0, std::abs(*r.weak_value)));
        }

        const double dw = wva::w_trace_project_denominator(ta, te, pa, pe, m, c);
        EXPECT_NEAR(dw, printed_w(ta, te, pa - pe, 1, 1, kj.J10), 1e-15);
        if (gt > 0 && std::abs(dw) > 1e-6) {
          const double n = printed_w(ta, te, pa - pe, kj.K11, kj.K00, kj.K10);
          const auto r = wva::w_trace_project_weak_value(ta, te, pa, pe, m, c);
          EXPECT_NEAR(*r.weak_value, (m.p0 * dw - n) / (gt * dw), 1e-9 * std::max(1.0, std::abs(*r.weak_value)));
        }
      }
}

TEST(Ghz, ControlsOnOneCollapseTarget) {
  for (int i = 1; i < 20; ++i)
    for (double gt : {0.0, 0.3}) {
      const ThreeQubitScenario sc{wva::ghz_state(), PostSelection(kPi * i / 20, 0.2 * i),
                                  actions(0, PostSelection(0, 0.4), PostSelection(0, 1.0))};
      const auto r = wva::ghz_weak_value(sc, kMeter, {gt, false});
      EXPECT_NEAR(*r.weak_value, 1.0, 1e-14);
    }
}

// With both controls projected the weak-limit weak value is
// (A^2 - B^2) / |A + B e^{i Phi}|^2, A = c_a c_b c_e, B = s_a s_b s_e, so it
// diverges as A -> B at Phi = pi.
TEST(Ghz, DivergesAsAmplitudesBalance) {
  double prev = 0;
  const auto half = PostSelection(kPi / 2, 0.0);
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const ThreeQubitScenario sc{wva::ghz_state(), PostSelection(kPi / 2 - eps, kPi), actions(0, half, half)};
    const auto r = wva::ghz_weak_value(sc, kMeter, {0.1, true});
    ASSERT_TRUE(r.weak_value);
    EXPECT_GT(std::abs(*r.weak_value), prev);
    prev = std::abs(*r.weak_value);
    EXPECT_LT(r.probability, eps * eps);
  }
  EXPECT_GT(prev, 100.0);
  // exactly balanced: 0 / 0
  const ThreeQubitScenario flat{wva::ghz_state(), PostSelection(kPi / 2, kPi), actions(0, half, half)};
  EXPECT_EQ(wva::ghz_weak_value(flat, kMeter, {0.1, true}).verdict, wva::Verdict::indeterminate);
}

TEST(Ghz, RequiresBothProjected) {
  const ThreeQubitScenario sc{wva::ghz_state(), PostSelection(1, 0),
                              actions(1, PostSelection(1, 0), PostSelection(1, 0))};
  EXPECT_THROW(wva::ghz_weak_value(sc, kMeter, kWeak), wva::InvalidArgument);
}

TEST(Ghz, AnyTracedControlNeverAmplifies) {
  for (int mask = 1; mask < 4; ++mask)
    for (int i = 0; i <= 30; ++i)
      for (int j = 0; j <= 30; ++j)
        for (int k = 0; k < 12; ++k)
          for (const CouplingSchedule c : {kWeak, CouplingSchedule{0.4, false}}) {
            const ThreeQubitScenario sc{wva::ghz_state(), PostSelection(kPi * i / 30, k * kPi / 6),
                                        actions(mask, PostSelection(kPi * j / 30, 0.7 * k),
                                                PostSelection(kPi * j / 30, 1.9 * k))};
            const auto r = wva::three_qubit_weak_value(sc, kMeter, c);
            if (!r.weak_value) continue;
            EXPECT_LE(std::abs(*r.weak_value), 1.0 + 1e-12);
          }
}

TEST(W, TraceProjectDenominatorExamples) {
  EXPECT_NEAR(wva::w_trace_project_denominator(0, 0, 0.3, 1.2, kMeter, kWeak), 0.0, 1e-15);
  const auto degenerate = wva::w_trace_project_weak_value(0, 0, 0.3, 1.2, kMeter, kWeak);
  EXPECT_EQ(degenerate.verdict, wva::Verdict::indeterminate);
  for (int k = 0; k <= 10; ++k)
    EXPECT_NEAR(wva::w_trace_project_denominator(kPi, kPi * k / 10, 0.1 * k, 0.5, kMeter, kWeak),
                1.0 / 3.0, 1e-15);
}

TEST(W, ProjectedOnZeroGivesMinusOne) {
  const auto r = wva::w_trace_project_weak_value(kPi, kPi, 0.0, 0.0, kMeter, kWeak);
  EXPECT_NEAR(*r.weak_value, -1.0, 1e-15);
}

TEST(W, TracedBothNeverAmplifies) {
  for (int i = 0; i <= 180; ++i) {
    const double ta = kPi * i / 180;
    const double d = wva::w_traced_both_denominator(ta);
    EXPECT_GE(d, 1.0 / 3.0);
    EXPECT_NEAR(d * 3, 1 + std::pow(std::sin(ta / 2), 2), 1e-15);
    for (const CouplingSchedule c : {kWeak, CouplingSchedule{0.5, false}}) {
      const ThreeQubitScenario sc{wva::w_state(), PostSelection(ta, 0.1 * i),
                                  {ControlAction::trace(), ControlAction::trace()}};
      const auto r = wva::three_qubit_weak_value(sc, kMeter, c);
      EXPECT_NEAR(r.denominator, d, 1e-15);
      EXPECT_LE(std::abs(*r.weak_value), 1.0);
    }
  }
}

// At fixed theta_e the weak-limit value reaches 1/sin(theta_e/2) (delta phi = pi).
TEST(W, FixedControlAngleSupremum) {
  for (double te : {0.3, 0.6, 1.0, 2.0, kPi}) {
    double best = 0;
    for (int i = 0; i <= 200000; ++i) {
      const double ta = kPi * i / 200000;
      const auto r = wva::w_trace_project_weak_value(ta, te, kPi, 0.0, kMeter, kWeak);
      if (r.weak_value) best = std::max(best, std::abs(*r.weak_value));
    }
    const double bound = 1 / std::sin(te / 2);
    EXPECT_LE(best, bound + 1e-9) << te;
    EXPECT_GT(best, bound * (1 - 1e-6)) << te;
  }
}

TEST(W, SupSearchSmallGrid) {
  wva::SupSearchGrid g;
  g.theta_a_points = 37;
  g.theta_e_points = 37;
  g.phi_points = 12;
  const auto r = wva::w_trace_project_sup(g);
  EXPECT_EQ(r.evaluated, 37u * 37u * 12u);
  EXPECT_GT(r.grid_sup, 1.0);
  EXPECT_GE(r.refined_sup, r.grid_sup);
  // grid argmax sits at small theta_e, bounded by the fixed-theta_e sup
  EXPECT_LE(r.grid_argmax.theta_e, kPi / 6);
  EXPECT_NEAR(r.grid_argmax.delta_phi, kPi, 1e-12);
  EXPECT_LE(r.grid_sup, 1 / std::sin(r.grid_argmax.theta_e / 2) + 1e-9);
  EXPECT_EQ(wva::w_trace_project_sup(g).grid_sup, r.grid_sup);
}

TEST(ThreeQubit, ProbabilitiesInRange) {
  for (const auto& initial : {wva::ghz_state(), wva::w_state()})
    for (int mask = 0; mask < 4; ++mask)
      for (int i = 0; i <= 12; ++i)
        for (int j = 0; j <= 12; ++j) {
          const ThreeQubitScenario sc{initial, PostSelection(kPi * i / 12, 0.5 * j),
                                      actions(mask, PostSelection(kPi * j / 12, 0.3 * i),
                                              PostSelection(kPi * (12 - j) / 12, i + j))};
          const auto r = wva::three_qubit_weak_value(sc, kMeter, {0.2, false});
          EXPECT_GE(r.probability, 0.0);
          EXPECT_LE(r.probability, 1.0);
        }
}

TEST(ThreeQubit, CustomStateRejected) {
  const ThreeQubitScenario sc{wva::ThreeQubitPure::make(wva::ghz_state().amplitudes), PostSelection(1, 0),
                              actions(0, PostSelection(1, 0), PostSelection(1, 0))};
  EXPECT_THROW(wva::three_qubit_terms(sc), wva::InvalidArgument);
}

// Tracing e from GHZ leaves the classically correlated pair (0, 0, 1), so the
// two set-ups describe the same experiment.
TEST(Efficiency, IdenticalConfigsGiveRatioOne) {
  for (int i = 1; i < 10; ++i) {
    const PostSelection a(kPi * i / 10, 0.3 * i), b(kPi * (10 - i) / 10, 1.1 * i);
    for (const CouplingSchedule c : {kWeak, CouplingSchedule{0.3, false}}) {
      const wva::ControlConfig two{{0, 0, 1}, a, b, kMeter, c};
      const auto rec = wva::efficiency_comparison(two, {wva::ghz_state(), a, actions(2, b, b)});
      EXPECT_NEAR(rec.probability_ratio, 1.0, 1e-12);
      EXPECT_NEAR(*rec.three_qubit.weak_value, *rec.two_qubit.weak_value, 1e-12);
    }
  }
}

TEST(Efficiency, GhzTunedToTwoCostsProbability) {
  const wva::ControlConfig two{wva::bell_phi_plus(), PostSelection(wva::ref::kFig2OptimumThetaA, kPi),
                               PostSelection(kPi / 2, 0.0), kMeter, kWeak};
  const ThreeQubitScenario start{wva::ghz_state(), PostSelection(0.7, kPi),
                                 actions(0, PostSelection(kPi / 2, 0.0), PostSelection(kPi / 2, 0.0))};
  const auto tuned = wva::tune_control_phase(start, 2.0, 0.0, kPi / 2, kMeter, kWeak);
  ASSERT_TRUE(tuned);
  const auto rec = wva::efficiency_comparison(two, *tuned);
  EXPECT_NEAR(*rec.two_qubit.weak_value, 2.0, 1e-12);
  EXPECT_NEAR(rec.two_qubit.probability, 0.1, 1e-12);
  EXPECT_NEAR(std::abs(*rec.three_qubit.weak_value), 2.0, 1e-9);
  EXPECT_LT(rec.three_qubit.probability, 0.1);
  EXPECT_LT(rec.probability_ratio, 1.0);
}

TEST(Efficiency, TuneReportsMissingBracket) {
  const ThreeQubitScenario start{wva::ghz_state(), PostSelection(0.7, kPi),
                                 actions(0, PostSelection(kPi / 2, 0.0), PostSelection(kPi / 2, 0.0))};
  EXPECT_FALSE(wva::tune_control_phase(start, 50.0, 0.0, kPi / 2, kMeter, kWeak));
}

}  // namespace
