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

#include <utility>

#include "railsynth/common.hpp"
#include "railsynth/synth.hpp"

namespace railsynth {

/// Uniformly random point on the two-rail state sphere, exactly normalized:
/// |alpha1|^2 uniform in [0,1], phases uniform in [0, 2*pi).
inline std::pair<Complex, Complex> random_rail_amplitudes(Rng& rng) {
  const double u = rng.uniform();
  const double phase1 = rng.uniform(0.0, kTwoPi);
  const double phase2 = rng.uniform(0.0, kTwoPi);
  return {std::polar(std::sqrt(u), phase1), std::polar(std::sqrt(1.0 - u), phase2)};
}

/// Random n-photon target with labels 1..n.
inline TargetSpec random_target(Rng& rng, int n) {
  TargetSpec t;
  for (int k = 1; k <= n; ++k) {
    const auto [a1, a2] = random_rail_amplitudes(rng);
    t.photons.push_back(TargetPhoton{PhotonLabel{k}, a1, a2});
  }
  return t;
}

}  // namespace railsynth
