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

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "railsynth/common.hpp"
#include "railsynth/state.hpp"

namespace railsynth {

/// Two-mode mixer; transmission cos(theta) stays on each mode, reflection
/// i*sin(theta) crosses over.
struct BeamSplitter {
  int mode_a = 0;
  int mode_b = 1;
  double theta = 0.0;
  friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

/// Single-mode phase: multiplies the amplitude by e^{i phi}.
struct PhaseShift {
  int mode = 0;
  double phi = 0.0;
  friend bool operator==(const PhaseShift&, const PhaseShift&) = default;
};

using Element = std::variant<BeamSplitter, PhaseShift>;

/**
 * @brief Multi-mode circuit: ordered elements plus a set of detector modes.
 *
 * Detector modes are absorbing.  Once a mode is declared a detector, no
 * later element may act on it; add() enforces this, matching the netlist
 * reading where `det` lines may appear mid-file.
 */
class Circuit {
 public:
  explicit Circuit(int num_modes) : num_modes_(num_modes) {
    if (num_modes < 2) throw CircuitError("a circuit needs at least 2 modes");
  }

  void add(const Element& element) {
    if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
      check_mode(bs->mode_a);
      check_mode(bs->mode_b);
      if (bs->mode_a == bs->mode_b)
        throw CircuitError("beam splitter modes must be distinct");
      if (!std::isfinite(bs->theta)) throw CircuitError("beam splitter angle must be finite");
      check_not_detector(bs->mode_a);
      check_not_detector(bs->mode_b);
    } else {
      const auto& ps = std::get<PhaseShift>(element);
      check_mode(ps.mode);
      if (!std::isfinite(ps.phi)) throw CircuitError("phase shift must be finite");
      check_not_detector(ps.mode);
    }
    elements_.push_back(element);
  }

  void add_beam_splitter(int mode_a, int mode_b, double theta) {
    add(BeamSplitter{mode_a, mode_b, theta});
  }

  void add_phase_shift(int mode, double phi) { add(PhaseShift{mode, phi}); }

  void add_detector(int mode) {
    check_mode(mode);
    if (detectors_.contains(mode))
      throw CircuitError("duplicate detector on mode " + std::to_string(mode));
    detectors_.insert(mode);
  }

  int num_modes() const { return num_modes_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::set<int>& detector_modes() const { return detectors_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_mode(int mode) const {
    if (mode < 0 || mode >= num_modes_)
      throw ModeOutOfRange("mode " + std::to_string(mode) + " out of range [0, " +
                           std::to_string(num_modes_) + ")");
  }

  void check_not_detector(int mode) const {
    if (detectors_.contains(mode))
      throw CircuitError("mode " + std::to_string(mode) + " already feeds a detector");
  }

  int num_modes_;
  std::vector<Element> elements_;
  std::set<int> detectors_;
};

/// In-place action of one element on a single photon's amplitude vector.
inline void apply_element(const Element& element, std::vector<Complex>& amps) {
  if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
    const double c = std::cos(bs->theta);
    const double s = std::sin(bs->theta);
    const Complex a = amps[static_cast<std::size_t>(bs->mode_a)];
    const Complex b = amps[static_cast<std::size_t>(bs->mode_b)];
    amps[static_cast<std::size_t>(bs->mode_a)] = c * a + Complex{0.0, s} * b;
    amps[static_cast<std::size_t>(bs->mode_b)] = Complex{0.0, s} * a + c * b;
  } else {
    const auto& ps = std::get<PhaseShift>(element);
    amps[static_cast<std::size_t>(ps.mode)] *= std::polar(1.0, ps.phi);
  }
}

/**
 * @brief Unitary (pre-detection) evolution: every photon's amplitude vector
 * passes through the same element sequence.
 */
inline ProductState apply_circuit(const Circuit& c, const ProductState& input) {
  for (const auto& ph : input.photons)
    if (ph.state.num_modes() != c.num_modes())
      throw ModeOutOfRange("input photon state does not span the circuit's modes");
  ProductState out = input;
  for (const Element& el : c.elements())
    for (auto& ph : out.photons) apply_element(el, ph.state.amps);
  return out;
}

struct PostSelectResult {
  ProductState state;
  double probability = 1.0;
};

/**
 * @brief Conditions on all detectors reading zero.
 *
 * Per photon, the detector-mode amplitudes are zeroed and the remainder
 * renormalized; the kept squared norms multiply into the success
 * probability.  Throws VanishingProbability when a photon keeps less than
 * 1e-15 of its norm.
 */
inline PostSelectResult post_select(const ProductState& s, const std::set<int>& detectors) {
  if (detectors.empty()) throw Error("post_select needs a nonempty detector set");
  for (int d : detectors)
    if (d < 0 || d >= s.num_modes()) throw ModeOutOfRange("detector mode out of range");

  PostSelectResult result{s, 1.0};
  for (auto& ph : result.state.photons) {
    for (int d : detectors) ph.state.amps[static_cast<std::size_t>(d)] = Complex{0.0, 0.0};
    const double kept = squared_norm(ph.state.amps);
    if (kept < kVanishingNorm)
      throw VanishingProbability("photon " + std::to_string(ph.label.index) +
                                 " is fully absorbed by the detectors");
    result.probability *= kept;
    const double inv = 1.0 / std::sqrt(kept);
    for (Complex& z : ph.state.amps) z *= inv;
  }
  return result;
}

/// Evolution followed by vacuum post-selection on the circuit's detectors.
inline PostSelectResult simulate(const Circuit& c, const ProductState& input) {
  ProductState evolved = apply_circuit(c, input);
  if (c.detector_modes().empty()) return PostSelectResult{std::move(evolved), 1.0};
  return post_select(evolved, c.detector_modes());
}

}  // namespace railsynth
