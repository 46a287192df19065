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

#include <array>
#include <vector>

#include "railsynth/common.hpp"
#include "railsynth/stages.hpp"
#include "railsynth/synth.hpp"

namespace railsynth {

// Numerical experiments around the limits of purely unitary preparation.
// A unitary sends the two injection vectors (e0, e1) to an orthonormal pair,
// so a two-photon product with non-orthogonal factors is out of reach; the
// routines below quantify how far out of reach.

/// |<factor1|factor2>| of a two-photon target.
inline double pair_overlap(const TargetSpec& t) {
  t.validate();
  if (t.size() != 2) throw Error("pair_overlap needs exactly 2 photons");
  const TargetPhoton& a = t.photons[0];
  const TargetPhoton& b = t.photons[1];
  // rounding can push the magnitude past 1 for (near-)identical factors
  return std::min(1.0, std::abs(std::conj(a.alpha1) * b.alpha1 + std::conj(a.alpha2) * b.alpha2));
}

/**
 * @brief Best product fidelity achievable for factor overlap c under any
 * unitary, by 1-D reduction.
 *
 * Writing the second factor in the first factor's basis and parametrizing
 * the image pair by chi (phases aligned), the fidelity is
 * cos^2(chi) * (c sin(chi) + sqrt(1-c^2) cos(chi))^2; the maximum is taken
 * on a 1e6-point grid over [0, pi/2].
 */
inline double overlap_bound_1d(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw OutOfRange("overlap must lie in [0, 1]");
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  constexpr int kPoints = 1000000;
  double best = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double chi = (kPi / 2.0) * i / (kPoints - 1);
    const double cc = std::cos(chi);
    const double amp = c * std::sin(chi) + s * cc;
    const double value = cc * cc * amp * amp;
    if (value > best) best = value;
  }
  return best;
}

/// Fidelity of the pair (U e0, U e1) against a two-photon target, where
/// U = stage_matrix(p) * diag(1, e^{i input_phase}) ranges over all of U(2).
inline double unitary_pair_fidelity(const TargetSpec& t, const StageParams& p,
                                    double input_phase) {
  const Mat2 u = stage_matrix(p);
  const Complex xi = std::polar(1.0, input_phase);
  const TargetPhoton& t1 = t.photons[0];
  const TargetPhoton& t2 = t.photons[1];
  const Complex ip1 = std::conj(t1.alpha1) * u(0, 0) + std::conj(t1.alpha2) * u(1, 0);
  const Complex ip2 = (std::conj(t2.alpha1) * u(0, 1) + std::conj(t2.alpha2) * u(1, 1)) * xi;
  return std::norm(ip1) * std::norm(ip2);
}

struct NoGoReport {
  double target_overlap = 0.0;
  double best_fidelity = 0.0;
  StageParams best_stage;
  double best_input_phase = 0.0;
  double bound_1d = 0.0;
  double gap = 0.0;
};

/**
 * @brief Maximizes the achievable product fidelity over U(2).
 *
 * Deterministic: a grid over the four parameters (stage angles/phases plus
 * an input-side relative phase), sized to the evaluation budget, followed by
 * pattern-search refinement.  Needs budget >= 1e4.
 */
inline NoGoReport best_unitary_fidelity(const TargetSpec& t, long budget = 200000) {
  t.validate();
  if (t.size() != 2) throw Error("best_unitary_fidelity needs exactly 2 photons");
  if (budget < 10000) throw OutOfRange("evaluation budget must be at least 1e4");

  const Complex a0 = std::conj(t.photons[0].alpha1);
  const Complex a1 = std::conj(t.photons[0].alpha2);
  const Complex b0 = std::conj(t.photons[1].alpha1);
  const Complex b1 = std::conj(t.photons[1].alpha2);

  // The input-side phase drops out of the fidelity (it only rotates the
  // second image vector), so the grid spends the budget on the three live
  // axes; the refinement below still moves in all four.
  const int n = std::max(8, static_cast<int>(std::floor(std::cbrt(static_cast<double>(budget)))));
  std::vector<double> cos_th(static_cast<std::size_t>(n)), sin_th(static_cast<std::size_t>(n));
  std::vector<Complex> phase(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double theta = (kPi / 2.0) * i / (n - 1);
    cos_th[static_cast<std::size_t>(i)] = std::cos(theta);
    sin_th[static_cast<std::size_t>(i)] = std::sin(theta);
    phase[static_cast<std::size_t>(i)] = std::polar(1.0, kTwoPi * i / n);
  }

  double best = -1.0;
  std::array<double, 4> best_x{};  // theta, phi_top, phi_bottom, input phase
  const Complex img{0.0, 1.0};
  for (int it = 0; it < n; ++it) {
    const double c = cos_th[static_cast<std::size_t>(it)];
    const double s = sin_th[static_cast<std::size_t>(it)];
    for (int jt = 0; jt < n; ++jt) {
      const Complex et = phase[static_cast<std::size_t>(jt)];
      const Complex ip1_top = a0 * et * c;      // e^{i phi_top} cos
      const Complex ip2_top = b0 * img * (et * s);
      for (int jb = 0; jb < n; ++jb) {
        const Complex eb = phase[static_cast<std::size_t>(jb)];
        const double f1 = std::norm(ip1_top + a1 * img * (eb * s));
        const double f2 = std::norm(ip2_top + b1 * eb * c);
        const double value = f1 * f2;  // |ip2| is independent of the input phase
        if (value > best) {
          best = value;
          best_x = {(kPi / 2.0) * it / (n - 1), kTwoPi * jt / n, kTwoPi * jb / n, 0.0};
        }
      }
    }
  }

  auto eval = [&](const std::array<double, 4>& x) {
    return unitary_pair_fidelity(t, StageParams{x[0], x[1], x[2]}, x[3]);
  };
  std::array<double, 4> steps{(kPi / 2.0) / (n - 1), kTwoPi / n, kTwoPi / n, kTwoPi / n};
  for (int iter = 0; iter < 400; ++iter) {
    bool improved = false;
    for (int axis = 0; axis < 4; ++axis) {
      for (double dir : {1.0, -1.0}) {
        std::array<double, 4> y = best_x;
        y[static_cast<std::size_t>(axis)] += dir * steps[static_cast<std::size_t>(axis)];
        if (axis == 0)
          y[0] = std::clamp(y[0], 0.0, kPi / 2.0);
        else
          y[static_cast<std::size_t>(axis)] = wrap_angle(y[static_cast<std::size_t>(axis)]);
        const double value = eval(y);
        if (value > best) {
          best = value;
          best_x = y;
          improved = true;
        }
      }
    }
    if (!improved) {
      double max_step = 0.0;
      for (double& st : steps) {
        st *= 0.5;
        max_step = std::max(max_step, st);
      }
      if (max_step < 1e-12) break;
    }
  }

  NoGoReport report;
  report.target_overlap = pair_overlap(t);
  report.best_fidelity = best;
  report.best_stage = StageParams{best_x[0], best_x[1], best_x[2]};
  report.best_input_phase = best_x[3];
  report.bound_1d = overlap_bound_1d(report.target_overlap);
  report.gap = report.bound_1d - report.best_fidelity;
  return report;
}

struct ClosureReport {
  double fraction_noncanonical = 0.0;
  double max_distance = 0.0;
  double mean_fit_residual = 0.0;
};

/// Distances above this count as outside the single-stage family.
inline constexpr double kNoncanonicalDistance = 1e-6;

/**
 * @brief Samples random k-stage cascades and measures how far their products
 * stray from the single-stage family.
 *
 * Each sampled stage carries its own output phases, so consecutive stages
 * see random inter-stage per-mode phases.  canonical_distance probes the
 * literal matrix-closure question; fit_column shows that single columns stay
 * exactly reachable either way.  Deterministic under a fixed seed.
 */
inline ClosureReport closure_experiment(int k, int trials, std::uint64_t seed) {
  if (k < 1) throw OutOfRange("cascade length must be at least 1");
  if (trials < 1) throw OutOfRange("trial count must be at least 1");

  Rng rng(seed);
  ClosureReport report;
  int noncanonical = 0;
  double residual_sum = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<StageParams> cascade;
    cascade.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      cascade.push_back(StageParams{rng.uniform(0.0, kPi / 2.0), rng.uniform(0.0, kTwoPi),
                                    rng.uniform(0.0, kTwoPi)});
    const Mat2 u = compose_stages(cascade);
    const double distance = canonical_distance(u);
    if (distance > kNoncanonicalDistance) ++noncanonical;
    report.max_distance = std::max(report.max_distance, distance);
    residual_sum += fit_column(u, 0).residual + fit_column(u, 1).residual;
  }
  report.fraction_noncanonical = static_cast<double>(noncanonical) / trials;
  report.mean_fit_residual = residual_sum / (2.0 * trials);
  return report;
}

}  // namespace railsynth
