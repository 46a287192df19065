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
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "railsynth/common.hpp"

namespace railsynth {

/// Identity of a distinguishable photon (stands for its frequency).
struct PhotonLabel {
  int index = 1;
  auto operator<=>(const PhotonLabel&) const = default;
};

/// One photon's amplitude vector over the circuit modes; unit norm.
struct SinglePhotonState {
  std::vector<Complex> amps;

  int num_modes() const { return static_cast<int>(amps.size()); }
};

/// Ordered list of per-photon states, all over the same mode count.
struct ProductState {
  struct Photon {
    PhotonLabel label;
    SinglePhotonState state;
  };

  std::vector<Photon> photons;

  int num_photons() const { return static_cast<int>(photons.size()); }
  int num_modes() const { return photons.empty() ? 0 : photons.front().state.num_modes(); }
};

/**
 * @brief Joint amplitude table over mode-assignment tuples (m_1, ..., m_N).
 *
 * Sparse: tuples with exactly zero amplitude are omitted.  std::map keys give
 * a deterministic (lexicographic) iteration order, so diffs are reproducible.
 */
struct DenseJointState {
  int num_modes = 0;
  int num_photons = 0;
  std::map<std::vector<int>, Complex> amps;

  double squared_norm() const {
    double s = 0.0;
    for (const auto& [tuple, amp] : amps) s += std::norm(amp);
    return s;
  }
};

inline double squared_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

inline Complex inner_product(const SinglePhotonState& a, const SinglePhotonState& b) {
  if (a.amps.size() != b.amps.size()) throw Error("mode count mismatch in inner product");
  Complex s{0.0, 0.0};
  for (std::size_t m = 0; m < a.amps.size(); ++m) s += std::conj(a.amps[m]) * b.amps[m];
  return s;
}

/**
 * @brief Scales an amplitude vector to unit norm.
 *
 * Throws ZeroVector when the input norm is below 1e-15.
 */
inline SinglePhotonState normalize(const std::vector<Complex>& raw) {
  for (const Complex& z : raw) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error("non-finite amplitude");
  }
  const double n2 = squared_norm(raw);
  if (n2 < kVanishingNorm) throw ZeroVector("cannot normalize a (near-)zero amplitude vector");
  SinglePhotonState out{raw};
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& z : out.amps) z *= inv;
  return out;
}

/**
 * @brief Product of per-photon squared overlaps between two product states.
 *
 * Photons are matched by label; the result is invariant under per-photon
 * global phases.  Throws LabelMismatch when the label sets differ.
 */
inline double product_fidelity(const ProductState& a, const ProductState& b) {
  if (a.photons.size() != b.photons.size())
    throw LabelMismatch("product states carry different photon counts");
  double fid = 1.0;
  for (const auto& pa : a.photons) {
    auto it = std::find_if(b.photons.begin(), b.photons.end(),
                           [&](const auto& pb) { return pb.label == pa.label; });
    if (it == b.photons.end())
      throw LabelMismatch("photon label " + std::to_string(pa.label.index) +
                          " missing from second product state");
    fid *= std::norm(inner_product(pa.state, it->state));
  }
  return fid;
}

/**
 * @brief Expands a product state into the joint amplitude table.
 *
 * amp(m_1, ..., m_N) = prod_k a_k[m_k].  Throws StateTooLarge when the table
 * would exceed 1e7 entries.
 */
inline DenseJointState densify(const ProductState& p) {
  if (p.photons.empty()) throw Error("cannot densify an empty product state");
  const int m = p.num_modes();
  const int n = p.num_photons();
  for (const auto& ph : p.photons)
    if (ph.state.num_modes() != m) throw Error("photons disagree on mode count");
  if (std::pow(static_cast<double>(m), n) > 1e7)
    throw StateTooLarge("joint state would exceed 1e7 amplitudes");

  DenseJointState out{m, n, {}};
  long long total = 1;
  for (int k = 0; k < n; ++k) total *= m;
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  for (long long idx = 0; idx < total; ++idx) {
    long long rest = idx;
    Complex amp{1.0, 0.0};
    for (int k = n - 1; k >= 0; --k) {
      const int mk = static_cast<int>(rest % m);
      rest /= m;
      tuple[static_cast<std::size_t>(k)] = mk;
      amp *= p.photons[static_cast<std::size_t>(k)].state.amps[static_cast<std::size_t>(mk)];
    }
    if (amp != Complex{0.0, 0.0}) out.amps[tuple] = amp;
  }
  return out;
}

/// Rotates the vector so its largest-magnitude amplitude is real positive.
inline void align_global_phase(SinglePhotonState& s) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < s.amps.size(); ++i) {
    const double mag = std::abs(s.amps[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  const Complex rot = std::conj(s.amps[best]) / best_mag;
  for (Complex& z : s.amps) z *= rot;
}

/// Dense counterpart of align_global_phase; ties break on the first tuple in map order.
inline void align_global_phase(DenseJointState& s) {
  const std::vector<int>* best = nullptr;
  double best_mag = -1.0;
  for (const auto& [tuple, amp] : s.amps) {
    const double mag = std::abs(amp);
    if (mag > best_mag) {
      best_mag = mag;
      best = &tuple;
    }
  }
  if (best == nullptr || best_mag <= 0.0) return;
  const Complex rot = std::conj(s.amps.at(*best)) / best_mag;
  for (auto& [tuple, amp] : s.amps) amp *= rot;
}

}  // namespace railsynth
