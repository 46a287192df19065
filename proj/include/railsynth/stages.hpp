/**
 * Copyright 2026 railsynth contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "railsynth/common.hpp"

namespace railsynth {

/// 2x2 complex matrix; row = output mode, column = input mode.
struct Mat2 {
  std::array<std::array<Complex, 2>, 2> e{};

  static Mat2 identity() {
    Mat2 m;
    m.e[0][0] = Complex{1.0, 0.0};
    m.e[1][1] = Complex{1.0, 0.0};
    return m;
  }

  Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  const Complex& operator()(int r, int c) const {
    return e[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }

  Mat2 operator*(const Mat2& rhs) const {
    Mat2 out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        out(r, c) = (*this)(r, 0) * rhs(0, c) + (*this)(r, 1) * rhs(1, c);
    return out;
  }

  Mat2 operator*(Complex s) const {
    Mat2 out = *this;
    for (auto& row : out.e)
      for (auto& z : row) z *= s;
    return out;
  }

  Mat2 dagger() const {
    Mat2 out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
  }

  Complex det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }

  double max_abs_diff(const Mat2& rhs) const {
    double d = 0.0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) d = std::max(d, std::abs((*this)(r, c) - rhs(r, c)));
    return d;
  }
};

/// Max-entry deviation of U†U from the identity.
inline double unitarity_defect(const Mat2& u) {
  return (u.dagger() * u).max_abs_diff(Mat2::identity());
}

inline void require_unitary(const Mat2& u) {
  if (unitarity_defect(u) > kUnitaryTol) throw NotUnitary("matrix is not unitary within 1e-10");
}

/**
 * @brief Canonical two-mode stage: beam splitter followed by one phase
 * shifter on each output arm.
 *
 * theta in [0, pi/2] so that transmission cos(theta) and sin(theta) are both
 * nonnegative; all signs live in the phases.  phi_top acts on the
 * lower-indexed mode, phi_bottom on the higher-indexed one.
 */
struct StageParams {
  double theta = 0.0;
  double phi_top = 0.0;
  double phi_bottom = 0.0;
};

/// Symmetric beam splitter: transmission cos(theta), reflection i*sin(theta).
inline Mat2 beam_splitter_matrix(double theta) {
  if (!std::isfinite(theta)) throw Error("beam splitter angle must be finite");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 m;
  m(0, 0) = Complex{c, 0.0};
  m(0, 1) = Complex{0.0, s};
  m(1, 0) = Complex{0.0, s};
  m(1, 1) = Complex{c, 0.0};
  return m;
}

/// diag(e^{i phi_top}, e^{i phi_bottom}) * beam_splitter_matrix(theta).
inline Mat2 stage_matrix(const StageParams& p) {
  Mat2 m = beam_splitter_matrix(p.theta);
  const Complex top = std::polar(1.0, p.phi_top);
  const Complex bottom = std::polar(1.0, p.phi_bottom);
  m(0, 0) *= top;
  m(0, 1) *= top;
  m(1, 0) *= bottom;
  m(1, 1) *= bottom;
  return m;
}

/**
 * @brief Product of a stage cascade, first applied = rightmost factor.
 *
 * Throws EmptyList for an empty cascade.
 */
inline Mat2 compose_stages(const std::vector<StageParams>& stages) {
  if (stages.empty()) throw EmptyList("cannot compose an empty stage list");
  Mat2 u = stage_matrix(stages.front());
  for (std::size_t i = 1; i < stages.size(); ++i) u = stage_matrix(stages[i]) * u;
  return u;
}

struct ColumnFit {
  StageParams params;
  double global_phase = 0.0;
  double residual = 0.0;
};

/**
 * @brief Fits a canonical stage whose image of basis vector e_port matches
 * the given unitary's column, up to a global phase.
 *
 * Any normalized 2-vector is a canonical-stage column, so the fit is closed
 * form and the residual is at rounding level.  Phases of zero-amplitude
 * entries are set to 0 by convention.
 */
inline ColumnFit fit_column(const Mat2& u, int input_port) {
  require_unitary(u);
  if (input_port != 0 && input_port != 1) throw OutOfRange("input port must be 0 or 1");
  const Complex v0 = u(0, input_port);
  const Complex v1 = u(1, input_port);

  StageParams p;
  if (input_port == 0) {
    // column 0 of a stage: (e^{i phi_top} cos, i e^{i phi_bottom} sin)
    p.theta = std::acos(std::clamp(std::abs(v0), 0.0, 1.0));
    p.phi_top = std::cos(p.theta) == 0.0 ? 0.0 : wrap_angle(std::arg(v0));
    p.phi_bottom = std::sin(p.theta) == 0.0 ? 0.0 : wrap_angle(std::arg(v1) - kPi / 2.0);
  } else {
    // column 1 of a stage: (i e^{i phi_top} sin, e^{i phi_bottom} cos)
    p.theta = std::acos(std::clamp(std::abs(v1), 0.0, 1.0));
    p.phi_top = std::sin(p.theta) == 0.0 ? 0.0 : wrap_angle(std::arg(v0) - kPi / 2.0);
    p.phi_bottom = std::cos(p.theta) == 0.0 ? 0.0 : wrap_angle(std::arg(v1));
  }

  const Mat2 fitted = stage_matrix(p);
  const double residual = std::hypot(std::abs(fitted(0, input_port) - v0),
                                     std::abs(fitted(1, input_port) - v1));
  return ColumnFit{p, 0.0, residual};
}

namespace detail {

/// max over output phases of |<stage(theta, ., .), U>| with the global phase
/// already eliminated: |X(theta)| + |Y(theta)|.
inline double stage_overlap_at_theta(const Mat2& u, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex x = c * u(0, 0) - Complex{0.0, 1.0} * (s * u(0, 1));
  const Complex y = c * u(1, 1) - Complex{0.0, 1.0} * (s * u(1, 0));
  return std::abs(x) + std::abs(y);
}

inline double overlap_to_distance(double overlap) {
  return std::sqrt(std::max(0.0, 4.0 - 2.0 * overlap));
}

}  // namespace detail

/**
 * @brief Frobenius distance from U to the canonical-stage family, minimized
 * over stage parameters and a global phase.
 *
 * 32^3 grid over (theta, phi_top, phi_bottom) with the global phase
 * eliminated analytically per grid point, then 100 local refinement steps
 * (ternary search on theta with the output phases at their per-theta
 * optimum).  Deterministic.
 */
inline double canonical_distance(const Mat2& u) {
  require_unitary(u);
  constexpr int kGrid = 32;

  // ||A - e^{i gamma} U||_F^2 = 4 - 2 |<A, U>| at the optimal gamma.
  double best_overlap = 0.0;
  double best_theta = 0.0;
  std::array<double, kGrid> cos_phi{};
  std::array<double, kGrid> sin_phi{};
  for (int j = 0; j < kGrid; ++j) {
    const double phi = kTwoPi * j / kGrid;
    cos_phi[static_cast<std::size_t>(j)] = std::cos(phi);
    sin_phi[static_cast<std::size_t>(j)] = std::sin(phi);
  }
  for (int i = 0; i < kGrid; ++i) {
    const double theta = (kPi / 2.0) * i / (kGrid - 1);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // <A, U> = e^{-i phi_top} X + e^{-i phi_bottom} Y
    const Complex x = c * u(0, 0) - Complex{0.0, 1.0} * (s * u(0, 1));
    const Complex y = c * u(1, 1) - Complex{0.0, 1.0} * (s * u(1, 0));
    for (int jt = 0; jt < kGrid; ++jt) {
      const Complex et{cos_phi[static_cast<std::size_t>(jt)], -sin_phi[static_cast<std::size_t>(jt)]};
      const Complex xt = et * x;
      for (int jb = 0; jb < kGrid; ++jb) {
        const Complex eb{cos_phi[static_cast<std::size_t>(jb)], -sin_phi[static_cast<std::size_t>(jb)]};
        const double overlap = std::abs(xt + eb * y);
        if (overlap > best_overlap) {
          best_overlap = overlap;
          best_theta = theta;
        }
      }
    }
  }

  // Refinement around the best grid theta; phases are optimal analytically.
  double lo = std::max(0.0, best_theta - (kPi / 2.0) / (kGrid - 1));
  double hi = std::min(kPi / 2.0, best_theta + (kPi / 2.0) / (kGrid - 1));
  double best = std::max({detail::stage_overlap_at_theta(u, lo),
                          detail::stage_overlap_at_theta(u, hi), best_overlap});
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    const double f1 = detail::stage_overlap_at_theta(u, m1);
    const double f2 = detail::stage_overlap_at_theta(u, m2);
    best = std::max({best, f1, f2});
    if (f1 < f2)
      lo = m1;
    else
      hi = m2;
  }
  return detail::overlap_to_distance(best);
}

}  // namespace railsynth
