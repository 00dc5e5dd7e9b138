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

// Correlation measures of the initial two-qubit state. All information
// quantities are in bits (log base 2).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wva/core.hpp"
#include "wva/pauli.hpp"
#include "wva/states.hpp"

namespace wva {

struct CorrelationReport {
  double concurrence = 0.0;
  double eof = 0.0;                    // bits
  double mutual_information = 0.0;     // bits
  double classical_correlation = 0.0;  // bits
  double quantum_discord = 0.0;        // bits
};

namespace detail {

/// x log2 x with the 0 log 0 = 0 convention.
inline double xlog2x(double x) {
  if (x <= 0.0) return 0.0;
  return x * std::log2(x);
}

// Eigen-solver noise floor for quantities that are exactly zero in theory.
inline constexpr double kCorrelationNoiseFloor = 1e-12;

// Density-matrix eigenvalues at or below this are treated as exact zeros.
inline constexpr double kRankFloor = 1e-14;

}  // namespace detail

inline double binary_entropy(double x) {
  return -detail::xlog2x(x) - detail::xlog2x(1.0 - x);
}

/// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4), mu the decreasing
/// square roots of the spectrum of rho (s2 x s2) rho* (s2 x s2).
inline double concurrence(const TwoQubitDensity& rho) {
  const Matrix4c yy = Matrix4c(pauli::kron(pauli::sigma2(), pauli::sigma2()));
  const Matrix4c& m = rho.matrix();

  // The mu are the singular values of sqrt(rho) sqrt(rho~), with
  // sqrt(rho~) = yy sqrt(rho)* yy. Taking them directly avoids a square root
  // of eigenvalue noise; eigenvalues of rho at rounding level are zeroed for
  // the same reason (rank-deficient states are common).
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(m);
  Eigen::Vector4d ev = eig.eigenvalues();
  for (int i = 0; i < 4; ++i) ev(i) = ev(i) <= detail::kRankFloor ? 0.0 : std::sqrt(ev(i));
  const Matrix4c sqrt_rho =
      eig.eigenvectors() * ev.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
  const Matrix4c product = sqrt_rho * yy * sqrt_rho.conjugate() * yy;
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Matrix4c>(product).singularValues();

  const double c = sv(0) - sv(1) - sv(2) - sv(3);
  return c <= detail::kCorrelationNoiseFloor ? 0.0 : std::min(c, 1.0);
}

inline double eof_from_concurrence(double c) {
  detail::require(c >= -1e-12 && c <= 1.0 + 1e-12,
                  "concurrence must lie in [0, 1], got " + std::to_string(c));
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

/// I(A:B) = S(A) + S(B) - S(AB) = 2 + sum_k lambda_k log2 lambda_k; BD
/// marginals are maximally mixed.
inline double bd_mutual_information(const BellDiagonalState& s) {
  require_valid(s);
  double sum = 0.0;
  for (double l : bd_eigenvalues(s)) sum += detail::xlog2x(std::max(l, 0.0));
  return 2.0 + sum;
}

/// Maximal classical correlation over projective measurements on one side,
/// closed form for BD states with c = max |c_j|.
inline double bd_classical_correlation(const BellDiagonalState& s) {
  require_valid(s);
  const double c =
      std::min(1.0, std::max({std::abs(s.c1), std::abs(s.c2), std::abs(s.c3)}));
  return 0.5 * detail::xlog2x(1.0 - c) + 0.5 * detail::xlog2x(1.0 + c);
}

inline double bd_quantum_discord(const BellDiagonalState& s) {
  const double qd = bd_mutual_information(s) - bd_classical_correlation(s);
  return qd <= detail::kCorrelationNoiseFloor ? 0.0 : qd;
}

/// True for the classically correlated axis states: exactly one c_j nonzero.
inline bool classify_axis_classical(const BellDiagonalState& s) {
  int nonzero = 0;
  for (int j = 1; j <= 3; ++j)
    if (std::abs(s[j]) >= 1e-12) ++nonzero;
  return nonzero == 1;
}

inline CorrelationReport correlation_report(const BellDiagonalState& s) {
  CorrelationReport r;
  r.concurrence = concurrence(bd_density_matrix(s));
  r.eof = eof_from_concurrence(r.concurrence);
  r.mutual_information = bd_mutual_information(s);
  r.classical_correlation = bd_classical_correlation(s);
  r.quantum_discord = bd_quantum_discord(s);
  return r;
}

}  // namespace wva
