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

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace wva {

#ifdef WVA_VERSION
inline constexpr std::string_view kVersion = WVA_VERSION;
#else
inline constexpr std::string_view kVersion = "0.1.0";
#endif

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;
using Vector8c = Eigen::Matrix<cplx, 8, 1>;

inline constexpr double kPi = std::numbers::pi;

/// Denominators at or below this magnitude are reported as divergent.
inline constexpr double kDivergenceCutoff = 1e-12;

/// Tolerance on trace and smallest eigenvalue when validating density matrices.
inline constexpr double kStateTolerance = 1e-12;

/// Thrown when an input lies outside its physical range. The CLI maps it
/// to a configuration error.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& message)
      : std::invalid_argument(message) {}
};

/// Outcome class of a ratio numerator/denominator.
enum class Verdict {
  finite,
  divergent,      // |denominator| <= cutoff, numerator nonzero
  indeterminate,  // both vanish; no limit value is reported
};

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::finite:
      return "finite";
    case Verdict::divergent:
      return "divergent";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

inline Verdict classify_ratio(double numerator, double denominator,
                              double cutoff = kDivergenceCutoff) {
  if (std::abs(denominator) > cutoff) return Verdict::finite;
  if (std::abs(numerator) <= cutoff) return Verdict::indeterminate;
  return Verdict::divergent;
}

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail

}  // namespace wva
