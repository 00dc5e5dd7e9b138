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

// Single-qubit basis convention used throughout the library:
//
//   index 0 = |1>  (sigma_3 eigenvalue +1)
//   index 1 = |0>  (sigma_3 eigenvalue -1)
//
// so sigma_3 = diag(+1, -1) and multi-qubit product states are ordered with
// the first factor as the most significant index.

#pragma once

#include "wva/core.hpp"

namespace wva::pauli {

inline Matrix2c identity() { return Matrix2c::Identity(); }

inline Matrix2c sigma1() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix2c sigma2() {
  Matrix2c m;
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

inline Matrix2c sigma3() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

inline Matrix2c sigma(int j) {
  switch (j) {
    case 1:
      return sigma1();
    case 2:
      return sigma2();
    case 3:
      return sigma3();
    default:
      return identity();
  }
}

template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Scalar = typename A::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Single-qubit basis ket: `kOne` is |1>, `kZero` is |0>.
inline constexpr int kOne = 0;
inline constexpr int kZero = 1;

}  // namespace wva::pauli
