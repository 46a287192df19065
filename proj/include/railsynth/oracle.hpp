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

#include <map>
#include <utility>
#include <vector>

#include "railsynth/circuit.hpp"
#include "railsynth/common.hpp"
#include "railsynth/state.hpp"

namespace railsynth {

// Brute-force joint-amplitude simulator.  Deliberately simple and slow; it
// exists as an independent check on the factorized fast path.

struct DenseSimResult {
  DenseJointState state;
  double probability = 1.0;
};

namespace detail {

inline void dense_apply_element(const Element& element, DenseJointState& st) {
  if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
    const double c = std::cos(bs->theta);
    const Complex is{0.0, std::sin(bs->theta)};
    for (int k = 0; k < st.num_photons; ++k) {
      std::map<std::vector<int>, Complex> next;
      for (const auto& [tuple, amp] : st.amps) {
        const int mk = tuple[static_cast<std::size_t>(k)];
        if (mk == bs->mode_a) {
          next[tuple] += c * amp;
          std::vector<int> crossed = tuple;
          crossed[static_cast<std::size_t>(k)] = bs->mode_b;
          next[crossed] += is * amp;
        } else if (mk == bs->mode_b) {
          next[tuple] += c * amp;
          std::vector<int> crossed = tuple;
          crossed[static_cast<std::size_t>(k)] = bs->mode_a;
          next[crossed] += is * amp;
        } else {
          next[tuple] += amp;
        }
      }
      st.amps = std::move(next);
    }
  } else {
    const auto& ps = std::get<PhaseShift>(element);
    for (auto& [tuple, amp] : st.amps) {
      int hits = 0;
      for (int mk : tuple)
        if (mk == ps.mode) ++hits;
      if (hits > 0) amp *= std::polar(1.0, ps.phi * hits);
    }
  }
}

}  // namespace detail

/**
 * @brief Evolves a joint amplitude table through the circuit, then projects
 * out every tuple touching a detector mode and renormalizes.
 *
 * Each element acts as the same 2x2 (or phase) unitary on every photon's
 * mode slot independently.  With no detectors the probability is exactly 1.
 */
inline DenseSimResult dense_simulate(const Circuit& c, const DenseJointState& input) {
  if (input.num_modes != c.num_modes())
    throw ModeOutOfRange("joint state does not span the circuit's modes");
  if (std::pow(static_cast<double>(input.num_modes), input.num_photons) > 1e7)
    throw StateTooLarge("joint state would exceed 1e7 amplitudes");

  DenseSimResult result{input, 1.0};
  for (const Element& el : c.elements()) detail::dense_apply_element(el, result.state);

  if (c.detector_modes().empty()) return result;

  std::map<std::vector<int>, Complex> kept;
  for (const auto& [tuple, amp] : result.state.amps) {
    bool touches = false;
    for (int mk : tuple)
      if (c.detector_modes().contains(mk)) {
        touches = true;
        break;
      }
    if (!touches && amp != Complex{0.0, 0.0}) kept[tuple] = amp;
  }
  result.state.amps = std::move(kept);

  const double p = result.state.squared_norm();
  if (p < kVanishingNorm)
    throw VanishingProbability("post-selection keeps a vanishing amplitude");
  const double inv = 1.0 / std::sqrt(p);
  for (auto& [tuple, amp] : result.state.amps) amp *= inv;
  result.probability = p;
  return result;
}

struct CrossCheckReport {
  double max_amp_diff = 0.0;
  double prob_diff = 0.0;
};

/**
 * @brief Compares the factorized simulation against the brute-force one.
 *
 * Per-photon global phases are fixed before differencing: each factor (and
 * the joint table) is rotated so its largest-magnitude amplitude is real
 * positive.
 */
inline CrossCheckReport cross_check(const Circuit& c, const ProductState& input) {
  PostSelectResult fast = simulate(c, input);
  DenseSimResult slow = dense_simulate(c, densify(input));

  ProductState aligned = fast.state;
  for (auto& ph : aligned.photons) align_global_phase(ph.state);
  DenseJointState from_fast = densify(aligned);
  align_global_phase(from_fast);

  DenseJointState from_slow = slow.state;
  align_global_phase(from_slow);

  CrossCheckReport report;
  report.prob_diff = std::abs(fast.probability - slow.probability);
  for (const auto& [tuple, amp] : from_fast.amps) {
    auto it = from_slow.amps.find(tuple);
    const Complex other = it == from_slow.amps.end() ? Complex{0.0, 0.0} : it->second;
    report.max_amp_diff = std::max(report.max_amp_diff, std::abs(amp - other));
  }
  for (const auto& [tuple, amp] : from_slow.amps) {
    if (!from_fast.amps.contains(tuple))
      report.max_amp_diff = std::max(report.max_amp_diff, std::abs(amp));
  }
  return report;
}

}  // namespace railsynth
