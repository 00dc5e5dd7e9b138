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

// Closed-form weak values of the target qubit a, coupled to the meter via
// H = g sigma_3^a x and post-selected on |psi_a>, with a control qubit b that
// is either traced out or projected on |psi_b>.
//
// After post-selecting a, the meter-traced numerator and denominator of <p>
// are
//
//   Tr_M(rho p) = 1/4 [ (I + c3 s3) cos^2(ta/2) K11 + (I - c3 s3) sin^2(ta/2) K00
//                       + (c1 s1 cos pa + c2 s2 sin pa) sin ta K10 ]
//   Tr_M(rho)   = same with K -> J,  J11 = J00 = 1
//
// with K11 = p0 - gt, K00 = p0 + gt, K10 = p0 J10 and
// J10 = exp(-g^2 t^2 / (2 sigma^2)). The weak value of sigma_z is defined by
// <p> = p0 - gt <sigma_z>_W.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "wva/core.hpp"
#include "wva/meter.hpp"
#include "wva/states.hpp"

namespace wva {

struct KJIntegrals {
  double K11 = 0.0;
  double K00 = 0.0;
  double K10 = 0.0;
  double J10 = 1.0;
};

inline KJIntegrals kj_integrals(const MeterProfile& m, const CouplingSchedule& c) {
  const double j10 = meter_overlap(m, c);
  return {m.p0 - c.gt, m.p0 + c.gt, m.p0 * j10, j10};
}

/// Weak value of sigma_z together with the pointer reading it implies.
/// `weak_value` and `mean_p` are empty unless the verdict is finite.
struct WeakValueReport {
  std::optional<double> weak_value;
  std::optional<double> mean_p;
  double probability = 0.0;
  bool amplified = false;
  Verdict verdict = Verdict::finite;
  double denominator = 0.0;

  bool divergent() const { return verdict != Verdict::finite; }
};

namespace detail {

/// numerator / denominator of the sigma_z weak value, prefactors included.
inline WeakValueReport make_report(double numerator, double denominator,
                                   double probability, const MeterProfile& m,
                                   const CouplingSchedule& c) {
  WeakValueReport r;
  r.denominator = denominator;
  r.probability = std::clamp(probability, 0.0, 1.0);
  r.verdict = classify_ratio(numerator, denominator);
  if (r.verdict == Verdict::finite) {
    const double wv = numerator / denominator;
    r.weak_value = wv;
    r.mean_p = m.p0 - c.gt * wv;
    r.amplified = std::abs(wv) > 1.0;
  } else {
    r.amplified = r.verdict == Verdict::divergent;
  }
  return r;
}

/// Pieces of the projected-control weak value: the denominator is
/// base + J10 * interference.
struct ProjectedTerms {
  double numerator = 0.0;
  double base = 0.0;
  double interference = 0.0;

  double denominator(double j10) const { return base + j10 * interference; }
};

inline ProjectedTerms projected_terms(const BellDiagonalState& s, double theta_a,
                                      double phi_a, double theta_b, double phi_b) {
  const double ca = std::cos(theta_a);
  const double cb = std::cos(theta_b);
  ProjectedTerms t;
  t.numerator = s.c3 * cb + ca;
  t.base = 1.0 + s.c3 * ca * cb;
  t.interference =
      std::sin(theta_a) * std::sin(theta_b) *
      (s.c1 * std::cos(phi_a) * std::cos(phi_b) + s.c2 * std::sin(phi_a) * std::sin(phi_b));
  return t;
}

inline ProjectedTerms projected_terms(const BellDiagonalState& s,
                                      const PostSelection& a,
                                      const PostSelection& b) {
  return projected_terms(s, a.theta(), a.phi(), b.theta(), b.phi());
}

}  // namespace detail

/// Everything needed to evaluate a single-control configuration.
struct ControlConfig {
  BellDiagonalState state;
  PostSelection target;
  PostSelection control;
  MeterProfile meter;
  CouplingSchedule coupling;
};

// ---------------------------------------------------------------------------
// Post-selection probability (weak-measurement limit)

/// <psi_a psi_b| rho |psi_a psi_b> for a BD state.
inline double postselection_probability(const BellDiagonalState& s,
                                        const PostSelection& a,
                                        const PostSelection& b) {
  require_valid(s);
  const auto t = detail::projected_terms(s, a, b);
  return std::clamp(t.denominator(1.0) / 4.0, 0.0, 1.0);
}

inline double postselection_probability(const TwoQubitDensity& rho,
                                        const PostSelection& a,
                                        const PostSelection& b) {
  const Vector4c v = product_vector(postselection_vector(a), postselection_vector(b));
  const double p = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  return std::clamp(p, 0.0, 1.0);
}

/// |<psi_i | psi_a psi_b>|^2 for a pure initial state.
inline double postselection_probability(const Vector4c& psi, const PostSelection& a,
                                        const PostSelection& b) {
  const Vector4c v = product_vector(postselection_vector(a), postselection_vector(b));
  return std::clamp(std::norm(v.dot(psi)), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Traced and projected control

/// Control traced out: <p> = p0 - gt cos(theta_a), never amplified.
inline double mean_p_traced(double theta_a, const MeterProfile& m,
                            const CouplingSchedule& c) {
  return m.p0 - c.gt * std::cos(theta_a);
}

/// Control projected on |psi_b>:
///
///   <s_z>_W = (c3 cos tb + cos ta) /
///             (1 + c3 cos ta cos tb + J10 sin ta sin tb (c1 cos pa cos pb + c2 sin pa sin pb))
inline WeakValueReport weak_value_projected(const BellDiagonalState& s,
                                            const PostSelection& a,
                                            const PostSelection& b,
                                            const MeterProfile& m,
                                            const CouplingSchedule& c) {
  require_valid(s);
  const auto t = detail::projected_terms(s, a, b);
  return detail::make_report(t.numerator, t.denominator(meter_overlap(m, c)),
                             t.denominator(1.0) / 4.0, m, c);
}

inline WeakValueReport weak_value_projected(const ControlConfig& cfg) {
  return weak_value_projected(cfg.state, cfg.target, cfg.control, cfg.meter,
                              cfg.coupling);
}

/// Bell state |Phi+> (c = (1, -1, 1)), which depends on the phases only
/// through delta = phi_a + phi_b.
inline WeakValueReport weak_value_bell(const PostSelection& a, const PostSelection& b,
                                       const MeterProfile& m,
                                       const CouplingSchedule& c) {
  const double ta = a.theta();
  const double tb = b.theta();
  const double delta = a.phi() + b.phi();
  const double num = std::cos(tb) + std::cos(ta);
  const double base = 1.0 + std::cos(ta) * std::cos(tb);
  const double inter = std::sin(ta) * std::sin(tb) * std::cos(delta);
  const double den = base + meter_overlap(m, c) * inter;
  return detail::make_report(num, den, (base + inter) / 4.0, m, c);
}

/// Uncorrelated initial state (|0> + |1>)/sqrt(2) (x) |0>: the control plays
/// no role and the result equals the single-qubit weak value. The reported
/// probability is |<psi_a|+>|^2.
inline WeakValueReport weak_value_uncorrelated(const PostSelection& a,
                                               const MeterProfile& m,
                                               const CouplingSchedule& c) {
  const double num = std::cos(a.theta());
  const double inter = std::sin(a.theta()) * std::cos(a.phi());
  const double den = 1.0 + meter_overlap(m, c) * inter;
  return detail::make_report(num, den, (1.0 + inter) / 2.0, m, c);
}

// ---------------------------------------------------------------------------
// Coherence generated in the target by measuring the control

struct ConditionalTarget {
  Matrix2c state;          // unnormalized <psi_b| rho |psi_b>, (|1>,|0>) basis
  double coherence = 0.0;  // |<1| state |0>|
};

inline ConditionalTarget coherence_generated(const TwoQubitDensity& rho,
                                             const PostSelection& b) {
  const Vector2c vb = postselection_vector(b);
  ConditionalTarget out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.state(i, j) = (vb.adjoint() * rho.target_block(i, j) * vb)(0, 0);
  out.coherence = std::abs(out.state(pauli::kOne, pauli::kZero));
  return out;
}

inline ConditionalTarget coherence_generated(const BellDiagonalState& s,
                                             const PostSelection& b) {
  return coherence_generated(bd_density_matrix(s), b);
}

// ---------------------------------------------------------------------------
// Pointer shifts for a generic weak value A_W = A + iB

/// <P>_f = <P>_i - gt A for a real weak value.
inline double pointer_shift_real(double a, const MeterProfile& m,
                                 const CouplingSchedule& c) {
  return m.p0 - c.gt * a;
}

/// <X>_f = <X>_i + 2 gt B Var(X)_i for a purely imaginary weak value iB.
/// For the Gaussian meter Var(X)_i = 1/(4 sigma^2).
inline double pointer_shift_imaginary(double b, const MeterProfile& m,
                                      const CouplingSchedule& c,
                                      double x_initial = 0.0) {
  const double var_x = 1.0 / (4.0 * m.sigma * m.sigma);
  return x_initial + 2.0 * c.gt * b * var_x;
}

struct AavResult {
  std::optional<cplx> value;
  double probability = 0.0;  // |<post|pre>|^2
  Verdict verdict = Verdict::finite;
};

/// A_W = <post|A|pre> / <post|pre> for pure states of any dimension.
inline AavResult aav_weak_value(const Eigen::VectorXcd& pre,
                                const Eigen::VectorXcd& post,
                                const Eigen::MatrixXcd& observable) {
  detail::require(pre.size() == post.size() && observable.rows() == pre.size() &&
                      observable.cols() == pre.size(),
                  "dimension mismatch in weak value");
  detail::require((observable - observable.adjoint()).cwiseAbs().maxCoeff() <= 1e-12,
                  "observable must be Hermitian");
  const cplx overlap = post.dot(pre);
  const cplx num = post.dot(observable * pre);
  AavResult r;
  r.probability = std::norm(overlap) / (pre.squaredNorm() * post.squaredNorm());
  r.verdict = classify_ratio(std::abs(num), std::abs(overlap));
  if (r.verdict == Verdict::finite) r.value = num / overlap;
  return r;
}

}  // namespace wva
