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

// Test-side reference model: explicit matrices written out by hand, and the
// weak-limit weak value Re Tr(P s_z rho) / Tr(P rho). Shares nothing with the
// library apart from Eigen.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>

#include <Eigen/Dense>

namespace bf {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat sy() {
  Mat m(2, 2);
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}
inline Mat sz() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat bd(double c1, double c2, double c3) {
  const Mat id = Mat::Identity(4, 4);
  return (id + c1 * kron(sx(), sx()) + c2 * kron(sy(), sy()) + c3 * kron(sz(), sz())) / 4.0;
}

/// cos(t/2)|1> + sin(t/2) e^{ip}|0> with |1> first.
inline Vec ket(double theta, double phi) {
  Vec v(2);
  v << std::cos(theta / 2), std::sin(theta / 2) * std::polar(1.0, phi);
  return v;
}

inline Mat projector(const Vec& v) { return v * v.adjoint(); }

struct Result {
  double weak_value;
  double probability;
};

/// Target first; `effect` acts on the remaining qubits.
inline Result weak_limit(const Mat& rho, const Vec& target, const Mat& effect) {
  const Eigen::Index d = effect.rows();
  const Mat P = kron(projector(target), effect);
  const Mat Z = kron(sz(), Mat::Identity(d, d));
  const C den = (P * rho).trace();
  return {((P * Z * rho).trace() / den).real(), den.real()};
}

/// |a b e> with physical labels (1 or 0), |1> at index 0 of each factor.
inline Mat three_qubit(const std::initializer_list<std::pair<std::array<int, 3>, C>>& amps) {
  Vec v = Vec::Zero(8);
  for (const auto& [labels, x] : amps)
    v((1 - labels[0]) * 4 + (1 - labels[1]) * 2 + (1 - labels[2])) = x;
  return v * v.adjoint();
}

inline Mat ghz() {
  const double s = 1.0 / std::sqrt(2.0);
  return three_qubit({{{0, 0, 0}, s}, {{1, 1, 1}, s}});
}

inline Mat w() {
  const double s = 1.0 / std::sqrt(3.0);
  return three_qubit({{{1, 0, 0}, s}, {{0, 1, 0}, s}, {{0, 0, 1}, s}});
}

}  // namespace bf
