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

// Brute-force evaluation of the post-selected pointer momentum. Nothing here
// uses the closed-form meter integrals: the translated meter amplitudes
// phi(q + gt) (target |1>) and phi(q - gt) (target |0>) are sampled on a
// composite trapezoid grid, and the qubit algebra is done with full density
// matrices.
//
// Momentum-diagonal traces of |p - gt><p' + gt| only pick up p - gt = p' + gt;
// substituting p' = p - 2 gt turns each meter trace into a single integral
// over the common momentum q, e.g.
//
//   K10 = (2 pi sigma^2)^{-1/2} int dp (p - gt) e^{-(p-p0)^2/4s^2 - (p-p0-2gt)^2/4s^2}
//       = int dq q phi(q + gt) phi(q - gt).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wva/core.hpp"
#include "wva/meter.hpp"
#include "wva/multiqubit.hpp"
#include "wva/states.hpp"
#include "wva/weakvalue.hpp"

namespace wva {

struct QuadratureSpec {
  double half_width = 12.0;  // in units of sigma, plus 2 gt padding
  int nodes = 4001;          // odd

  void validate() const {
    detail::require(nodes >= 101 && nodes % 2 == 1,
                    "quadrature node count must be odd and >= 101");
    detail::require(half_width >= 8.0, "quadrature half-width must be >= 8 sigma");
  }

  /// Same domain with the node spacing halved.
  QuadratureSpec refined() const { return {half_width, 2 * nodes - 1}; }
};

/// Convergence threshold for doubling the node count.
inline constexpr double kOracleConvergence = 1e-8;

struct MeterIntegrals {
  double J11 = 0.0, J00 = 0.0, J10 = 0.0;
  double K11 = 0.0, K00 = 0.0, K10 = 0.0;

  double J(int i, int j) const { return i == j ? (i == pauli::kOne ? J11 : J00) : J10; }
  double K(int i, int j) const { return i == j ? (i == pauli::kOne ? K11 : K00) : K10; }
};

namespace detail {

// Pairwise summation; fixed recursion order gives bit-identical results.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 32) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Trapezoid sums of the six meter integrals; no validation of `q`.
inline MeterIntegrals quadrature_integrals(const MeterProfile& m, const CouplingSchedule& c,
                                           double half_width, int nodes) {
  const double gt = c.gt;
  const double lo = m.p0 - half_width * m.sigma - 2.0 * gt;
  const double hi = m.p0 + half_width * m.sigma + 2.0 * gt;
  const double h = (hi - lo) / (nodes - 1);

  std::array<std::vector<double>, 6> terms;
  for (auto& t : terms) t.resize(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) {
    const double q = lo + k * h;
    const double w = (k == 0 || k == nodes - 1) ? 0.5 * h : h;
    const double up = wavefunction(m, q + gt);    // target |1>: |p> -> |p - gt>
    const double down = wavefunction(m, q - gt);  // target |0>: |p> -> |p + gt>
    const auto i = static_cast<std::size_t>(k);
    terms[0][i] = w * up * up;
    terms[1][i] = w * down * down;
    terms[2][i] = w * up * down;
    terms[3][i] = w * q * up * up;
    terms[4][i] = w * q * down * down;
    terms[5][i] = w * q * up * down;
  }
  MeterIntegrals out;
  out.J11 = pairwise_sum(terms[0]);
  out.J00 = pairwise_sum(terms[1]);
  out.J10 = pairwise_sum(terms[2]);
  out.K11 = pairwise_sum(terms[3]);
  out.K00 = pairwise_sum(terms[4]);
  out.K10 = pairwise_sum(terms[5]);
  return out;
}

}  // namespace detail

struct OracleKJ {
  KJIntegrals kj;
  MeterIntegrals raw;
  bool converged = false;
  double convergence_delta = 0.0;
};

/// K11, K00, K10, J10 by direct quadrature of their defining integrals.
inline OracleKJ oracle_kj(const MeterProfile& m, const CouplingSchedule& c,
                          const QuadratureSpec& q = {}) {
  q.validate();
  detail::require(!c.weak_limit, "the quadrature oracle needs a finite meter width");
  const auto coarse = detail::quadrature_integrals(m, c, q.half_width, q.nodes);
  const auto fine = detail::quadrature_integrals(m, c, q.half_width, q.refined().nodes);
  OracleKJ out;
  out.raw = fine;
  out.kj = {fine.K11, fine.K00, fine.K10, fine.J10};
  out.convergence_delta = std::max({std::abs(fine.K11 - coarse.K11), std::abs(fine.K00 - coarse.K00),
                                    std::abs(fine.K10 - coarse.K10), std::abs(fine.J10 - coarse.J10)});
  out.converged = out.convergence_delta <= kOracleConvergence;
  return out;
}

/// Initial qubit state (target first), the target post-selection, and the
/// operator E applied on the control space: |psi_b><psi_b| when projecting,
/// the identity when tracing.
struct OracleProblem {
  Eigen::MatrixXcd rho;
  PostSelection target;
  Eigen::MatrixXcd control_effect;
  MeterProfile meter;
  CouplingSchedule coupling;
};

inline Eigen::MatrixXcd control_effect(const ControlAction& a) {
  if (a.traced) return Eigen::MatrixXcd::Identity(2, 2);
  const Vector2c v = postselection_vector(a.selection);
  return v * v.adjoint();
}

inline OracleProblem make_oracle_problem(const TwoQubitDensity& rho, const PostSelection& target,
                                         const ControlAction& control, const MeterProfile& m,
                                         const CouplingSchedule& c) {
  return {rho.matrix(), target, control_effect(control), m, c};
}

inline OracleProblem make_oracle_problem(const ThreeQubitPure& psi, const PostSelection& target,
                                         const std::array<ControlAction, 2>& controls,
                                         const MeterProfile& m, const CouplingSchedule& c) {
  const Eigen::VectorXcd v = psi.amplitudes;
  return {v * v.adjoint(), target,
          pauli::kron(control_effect(controls[0]), control_effect(controls[1])), m, c};
}

struct OracleResult {
  double mean_p = 0.0;
  double numerator = 0.0;    // Tr[E <psi_a| Tr_M(rho(t) p) |psi_a>]
  double denominator = 0.0;  // Tr[E <psi_a| Tr_M(rho(t)) |psi_a>]
  double imag_residue = 0.0;
  bool converged = false;
  double convergence_delta = 0.0;
  Verdict verdict = Verdict::finite;

  /// (p0 - <p>) / gt
  std::optional<double> weak_value(double p0, double gt) const {
    if (verdict != Verdict::finite || gt <= 0.0) return std::nullopt;
    return (p0 - mean_p) / gt;
  }
};

namespace detail {

inline OracleResult assemble(const OracleProblem& pr, const MeterIntegrals& mi) {
  const Eigen::Index d = pr.control_effect.rows();
  detail::require(pr.rho.rows() == 2 * d && pr.rho.cols() == 2 * d,
                  "control effect does not match the state dimension");
  const Vector2c a = postselection_vector(pr.target);
  Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd den = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      // <psi_a|i> rho_ij <j|psi_a> with meter trace weights
      const cplx amp = std::conj(a(i)) * a(j);
      const Eigen::MatrixXcd block = pr.rho.block(i * d, j * d, d, d);
      num += amp * mi.K(i, j) * block;
      den += amp * mi.J(i, j) * block;
    }
  const cplx n = (num * pr.control_effect).trace();
  const cplx dd = (den * pr.control_effect).trace();
  OracleResult out;
  out.numerator = n.real();
  out.denominator = dd.real();
  out.imag_residue = std::max(std::abs(n.imag()), std::abs(dd.imag()));
  // the pointer shift p0 * den - num carries the classification
  out.verdict = classify_ratio(pr.meter.p0 * out.denominator - out.numerator, out.denominator);
  if (out.verdict == Verdict::finite) out.mean_p = out.numerator / out.denominator;
  return out;
}

}  // namespace detail

/// <p> after post-selection, from quadrature of the translated meter states.
/// Converged when halving the node spacing moves <p> by at most 1e-8.
inline OracleResult oracle_mean_p(const OracleProblem& pr, const QuadratureSpec& q = {}) {
  q.validate();
  detail::require(!pr.coupling.weak_limit, "the quadrature oracle needs a finite meter width");
  const auto coarse = detail::assemble(
      pr, detail::quadrature_integrals(pr.meter, pr.coupling, q.half_width, q.nodes));
  auto fine = detail::assemble(
      pr, detail::quadrature_integrals(pr.meter, pr.coupling, q.half_width, q.refined().nodes));
  if (fine.verdict == Verdict::finite && coarse.verdict == Verdict::finite) {
    fine.convergence_delta = std::abs(fine.mean_p - coarse.mean_p);
    fine.converged = fine.convergence_delta <= kOracleConvergence;
  }
  return fine;
}

struct ConvergenceRow {
  int nodes = 0;
  double mean_p = 0.0;
  double delta = 0.0;  // |mean_p - previous row|; 0 for the first row
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  bool passed = false;
};

/// Runs the oracle on a ladder of node counts (default 1001..8001) with a
/// fixed domain; passes when the last successive difference is below 1e-8.
inline ConvergenceStudy convergence_study(const OracleProblem& pr, double half_width = 12.0,
                                          std::vector<int> ladder = {1001, 2001, 4001, 8001}) {
  detail::require(!pr.coupling.weak_limit, "the quadrature oracle needs a finite meter width");
  detail::require(ladder.size() >= 2, "convergence ladder needs at least two rungs");
  ConvergenceStudy out;
  for (int n : ladder) {
    detail::require(n >= 3 && n % 2 == 1, "ladder node counts must be odd");
    const auto r = detail::assemble(
        pr, detail::quadrature_integrals(pr.meter, pr.coupling, half_width, n));
    ConvergenceRow row{n, r.mean_p, 0.0};
    if (!out.rows.empty()) row.delta = std::abs(row.mean_p - out.rows.back().mean_p);
    out.rows.push_back(row);
  }
  out.passed = out.rows.back().delta < kOracleConvergence;
  return out;
}

}  // namespace wva
