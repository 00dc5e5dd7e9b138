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

// Initial states of the qubits: Bell-diagonal two-qubit states, the GHZ and W
// three-qubit states, and pure single-qubit post-selections. All matrices use
// the (|1>, |0>) ordering documented in pauli.hpp.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "wva/core.hpp"
#include "wva/pauli.hpp"

namespace wva {

/// rho = (I + sum_j c_j sigma_j (x) sigma_j) / 4. Construction does not
/// validate; use validate_bd() or any operation that requires a physical
/// state.
struct BellDiagonalState {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double operator[](int j) const { return j == 1 ? c1 : (j == 2 ? c2 : c3); }
  friend bool operator==(const BellDiagonalState&,
                         const BellDiagonalState&) = default;
};

/// Projective post-selection onto cos(theta/2)|1> + sin(theta/2)e^{i phi}|0>.
/// theta is in [0, pi]; phi is wrapped into [0, 2 pi).
class PostSelection {
 public:
  PostSelection() = default;
  PostSelection(double theta, double phi) : theta_(theta), phi_(wrap(phi)) {
    detail::require(std::isfinite(theta) && std::isfinite(phi),
                    "post-selection angles must be finite");
    detail::require(theta >= -1e-12 && theta <= kPi + 1e-12,
                    "theta must lie in [0, pi], got " + std::to_string(theta));
    theta_ = std::clamp(theta, 0.0, kPi);
  }

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  friend bool operator==(const PostSelection&, const PostSelection&) = default;

 private:
  static double wrap(double phi) {
    double w = std::fmod(phi, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    if (w >= 2.0 * kPi) w = 0.0;
    return w;
  }

  double theta_ = 0.0;
  double phi_ = 0.0;
};

inline Vector2c postselection_vector(const PostSelection& ps) {
  Vector2c v;
  v(pauli::kOne) = std::cos(ps.theta() / 2.0);
  v(pauli::kZero) = std::sin(ps.theta() / 2.0) * std::polar(1.0, ps.phi());
  return v;
}

// ---------------------------------------------------------------------------
// Bell-diagonal spectrum and validity

/// Eigenvalues in the order (Psi-, Psi+, Phi+, Phi-) for the usual sign
/// conventions; they always sum to one.
inline std::array<double, 4> bd_eigenvalues(const BellDiagonalState& s) {
  return {(1.0 - s.c1 - s.c2 - s.c3) / 4.0, (1.0 - s.c1 + s.c2 + s.c3) / 4.0,
          (1.0 + s.c1 - s.c2 + s.c3) / 4.0, (1.0 + s.c1 + s.c2 - s.c3) / 4.0};
}

struct BdValidity {
  bool valid = false;
  double min_eigenvalue = 0.0;
  int offending_index = -1;  // index into bd_eigenvalues(), -1 when valid
  std::string reason;

  explicit operator bool() const { return valid; }
};

inline BdValidity validate_bd(const BellDiagonalState& s) {
  BdValidity out;
  if (!std::isfinite(s.c1) || !std::isfinite(s.c2) || !std::isfinite(s.c3)) {
    out.reason = "non-finite correlation coefficient";
    return out;
  }
  const auto lambda = bd_eigenvalues(s);
  const auto it = std::min_element(lambda.begin(), lambda.end());
  out.min_eigenvalue = *it;
  if (out.min_eigenvalue >= -kStateTolerance) {
    out.valid = true;
    return out;
  }
  out.offending_index = static_cast<int>(it - lambda.begin());
  out.reason = "eigenvalue lambda" + std::to_string(out.offending_index + 1) +
               " = " + std::to_string(out.min_eigenvalue) + " is negative";
  return out;
}

inline void require_valid(const BellDiagonalState& s) {
  const auto v = validate_bd(s);
  detail::require(v.valid, "invalid Bell-diagonal state: " + v.reason);
}

inline BellDiagonalState werner(double c) {
  detail::require(c >= 0.0 && c <= 1.0,
                  "Werner parameter must lie in [0, 1], got " +
                      std::to_string(c));
  return {-c, -c, -c};
}

inline BellDiagonalState bell_phi_plus() { return {1.0, -1.0, 1.0}; }

inline BellDiagonalState maximally_mixed() { return {0.0, 0.0, 0.0}; }

// ---------------------------------------------------------------------------
// Two-qubit density matrices

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix (first factor is
/// the target qubit a, second the control qubit b).
class TwoQubitDensity {
 public:
  static TwoQubitDensity from_matrix(const Matrix4c& m) {
    detail::require(m.allFinite(), "density matrix has non-finite entries");
    detail::require((m - m.adjoint()).cwiseAbs().maxCoeff() <= kStateTolerance,
                    "density matrix is not Hermitian");
    detail::require(std::abs(m.trace() - cplx(1.0)) <= kStateTolerance,
                    "density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix4c> eig(m, Eigen::EigenvaluesOnly);
    detail::require(eig.eigenvalues().minCoeff() >= -kStateTolerance,
                    "density matrix is not positive semidefinite");
    return TwoQubitDensity(m);
  }

  static TwoQubitDensity from_pure(const Vector4c& psi) {
    detail::require(std::abs(psi.norm() - 1.0) <= kStateTolerance,
                    "pure state is not normalized");
    return from_matrix(psi * psi.adjoint());
  }

  const Matrix4c& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  /// Block <i|_a rho |j>_a acting on the control qubit.
  Matrix2c target_block(int i, int j) const { return m_.block<2, 2>(2 * i, 2 * j); }

 private:
  explicit TwoQubitDensity(const Matrix4c& m) : m_(m) {}
  Matrix4c m_;
};

inline TwoQubitDensity bd_density_matrix(const BellDiagonalState& s) {
  require_valid(s);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  for (int j = 1; j <= 3; ++j)
    m += s[j] * pauli::kron(pauli::sigma(j), pauli::sigma(j));
  m /= 4.0;
  return TwoQubitDensity::from_matrix(Matrix4c(m));
}

/// Product state |psi_a> (x) |psi_b>.
inline Vector4c product_vector(const Vector2c& a, const Vector2c& b) {
  Vector4c v;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
  return v;
}

/// The uncorrelated pure state (|0> + |1>)/sqrt(2) (x) |0>.
inline TwoQubitDensity uncorrelated_plus_zero() {
  const double h = 1.0 / std::sqrt(2.0);
  Vector2c a(h, h);
  Vector2c b(0.0, 0.0);
  b(pauli::kZero) = 1.0;
  return TwoQubitDensity::from_pure(product_vector(a, b));
}

inline Matrix2c partial_trace_target(const Matrix4c& m) {
  return m.block<2, 2>(0, 0) + m.block<2, 2>(2, 2);
}

inline Matrix2c partial_trace_control(const Matrix4c& m) {
  Matrix2c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Three-qubit pure states (qubit order a, b, e)

enum class ThreeQubitTag { ghz, w, custom };

inline std::string_view to_string(ThreeQubitTag t) {
  switch (t) {
    case ThreeQubitTag::ghz:
      return "GHZ";
    case ThreeQubitTag::w:
      return "W";
    case ThreeQubitTag::custom:
      return "custom";
  }
  return "custom";
}

struct ThreeQubitPure {
  Vector8c amplitudes = Vector8c::Zero();
  ThreeQubitTag tag = ThreeQubitTag::custom;

  static ThreeQubitPure make(const Vector8c& amps,
                             ThreeQubitTag tag = ThreeQubitTag::custom) {
    detail::require(std::abs(amps.norm() - 1.0) <= kStateTolerance,
                    "three-qubit state is not normalized");
    return {amps, tag};
  }
};

/// Index of the basis ket |x_a x_b x_e> where each x is the physical label
/// (1 or 0).
inline constexpr int ket_index(int a, int b, int e) {
  auto idx = [](int label) { return label == 1 ? pauli::kOne : pauli::kZero; };
  return 4 * idx(a) + 2 * idx(b) + idx(e);
}

/// (|000> + |111>) / sqrt(2)
inline ThreeQubitPure ghz_state() {
  Vector8c v = Vector8c::Zero();
  v(ket_index(0, 0, 0)) = 1.0 / std::sqrt(2.0);
  v(ket_index(1, 1, 1)) = 1.0 / std::sqrt(2.0);
  return ThreeQubitPure::make(v, ThreeQubitTag::ghz);
}

/// (|100> + |010> + |001>) / sqrt(3)
inline ThreeQubitPure w_state() {
  Vector8c v = Vector8c::Zero();
  const double a = 1.0 / std::sqrt(3.0);
  v(ket_index(1, 0, 0)) = a;
  v(ket_index(0, 1, 0)) = a;
  v(ket_index(0, 0, 1)) = a;
  return ThreeQubitPure::make(v, ThreeQubitTag::w);
}

}  // namespace wva
