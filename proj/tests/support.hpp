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

#include <vector>

#include "railsynth/railsynth.hpp"

namespace testsupport {

using railsynth::Circuit;
using railsynth::Complex;
using railsynth::PhotonLabel;
using railsynth::ProductState;
using railsynth::Rng;
using railsynth::SinglePhotonState;

inline SinglePhotonState random_state(Rng& rng, int num_modes) {
  std::vector<Complex> raw(static_cast<std::size_t>(num_modes));
  for (Complex& z : raw) z = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return railsynth::normalize(raw);
}

inline ProductState random_product(Rng& rng, int num_photons, int num_modes) {
  ProductState p;
  for (int k = 1; k <= num_photons; ++k)
    p.photons.push_back({PhotonLabel{k}, random_state(rng, num_modes)});
  return p;
}

/// Random circuit with elements first and detectors last, so the absorbing
/// rule is satisfied by construction.
inline Circuit random_circuit(Rng& rng, int num_modes, int max_elements, int max_detectors) {
  Circuit c(num_modes);
  const int n_elements = rng.uniform_int(0, max_elements);
  for (int i = 0; i < n_elements; ++i) {
    if (rng.uniform() < 0.6) {
      const int a = rng.uniform_int(0, num_modes - 1);
      int b = rng.uniform_int(0, num_modes - 2);
      if (b >= a) ++b;
      c.add_beam_splitter(a, b, rng.uniform(0.0, railsynth::kPi));
    } else {
      c.add_phase_shift(rng.uniform_int(0, num_modes - 1), rng.uniform(0.0, railsynth::kTwoPi));
    }
  }
  const int n_detectors = rng.uniform_int(0, std::min(max_detectors, num_modes - 1));
  std::vector<int> candidates;
  for (int m = 0; m < num_modes; ++m) candidates.push_back(m);
  for (int i = 0; i < n_detectors; ++i) {
    const int pick = rng.uniform_int(0, static_cast<int>(candidates.size()) - 1);
    c.add_detector(candidates[static_cast<std::size_t>(pick)]);
    candidates.erase(candidates.begin() + pick);
  }
  return c;
}

}  // namespace testsupport
