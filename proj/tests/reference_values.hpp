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

// Reference numbers produced by tests/oracle/derive_values.py (explicit
// density matrices, scipy quadrature and root finding; no shared code with
// the library). Regenerate with `python3 tests/oracle/derive_values.py`.

#pragma once

namespace wva::ref {

// Bell |Phi+>, theta_a = theta_b = 1.4, phi_a = pi, phi_b = 0
inline constexpr double kBell14WeakLimit = 5.88349008482735;
inline constexpr double kBell14Probability = 0.0144444148328355;
inline constexpr double kThresholdSigmaHalf = 0.414285926343;
inline constexpr double kThresholdSigmaThreeHalves = 1.24285777903;
inline constexpr double kAsymptote = 0.33038971364;
inline constexpr double kThresholdR = 1.28666400831;
inline constexpr double kBell14MeanPGt02 = -0.513339904489389;  // sigma = 1/2, gt = 0.2

// (|0> + |1>)/sqrt2 (x) |0>, theta_a = 1.4, phi_a = pi, sigma = 1/2
inline constexpr double kSingleQubitThreshold = 0.292944387867;

// Bell, theta_b = pi/2, delta = pi, probability >= 0.1
inline constexpr double kFig2OptimumThetaA = 0.643501108793284;

// sensitivity: theta_a = pi/3, theta_b0 = pi/2, phi_b = 0, weak limit
inline constexpr double kSensAmpWeakValue = 3.73205080757;
inline constexpr double kSensAmpDerivative = 6.464101618;
inline constexpr double kSensAmpProbability = 0.0334936490539;
inline constexpr double kSensAmpMinAngle = 0.00577350269;     // 1 % relative limit
inline constexpr double kSensPlainMinAngle = 0.006666666667;  // phi_a = pi/2

// Werner, theta_a = pi/10, phases 0, weak limit
inline constexpr double kWerner025ThetaBHalfPi = 1.03068100269846;
inline constexpr double kWerner025ThetaBQuarterPi = 0.996180695807197;
inline constexpr double kWerner1ThetaBHalfPi = 1.37638192047117;

// correlations (bits)
inline constexpr double kWerner025MutualInfo = 0.119759185055852;
inline constexpr double kWerner025Classical = 0.0455659970750349;
inline constexpr double kWerner025Discord = 0.0741931879808172;
inline constexpr double kEofHalf = 0.35457890266527;
inline constexpr double kWernerHalfMutualInfo = 0.451205059304602;
inline constexpr double kWernerHalfClassical = 0.188721875540867;

// three qubits, theta/phi = a (1.1, 0.4), b (2.0, 1.3), e (0.7, 5.0),
// gt = 0.35, sigma = 0.8, p0 = 0
inline constexpr double kGhzProjectedMeanP = -0.180793087655857;
inline constexpr double kWProjectedMeanP = 0.101146362302503;
inline constexpr double kWTracedProjectedMeanP = 0.199486305857142;

}  // namespace wva::ref
