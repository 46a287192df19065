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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "railsynth/circuit.hpp"
#include "railsynth/common.hpp"
#include "railsynth/stages.hpp"
#include "railsynth/state.hpp"

namespace railsynth {

// Builders for post-selected interferometers that place each distinguishable
// photon into an arbitrary superposition of two output rails.
//
// Mode layout, fixed across the library:
//
//   N = 1   modes (0, 1); photon enters mode 0; stage "A" = bs(0,1) plus one
//           phase shifter per arm; output rails (0, 1); no detectors.
//
//   N = 2   modes 0..3.  Photon 1 enters mode 1, photon 2 enters mode 2.
//             A = bs(0,1)   input stage of photon 1 (phases on modes 0, 1)
//             B = bs(2,3)   input stage of photon 2 (phases on modes 2, 3)
//             C = bs(1,2)   50:50, detector leg = mode 1
//             D = bs(0,3)   50:50, detector leg = mode 0
//           Detectors {0, 1}; output rails (2, 3): rail 1 = mode 2 carries
//           every photon's alpha1, rail 2 = mode 3 carries every alpha2.
//
//   N -> N+1  appends modes (e1, e2) = (M, M+1); the new photon enters e2.
//             E_n = bs(M, M+1)  input stage (phases on modes M, M+1)
//             F_n = bs(rail2, M+1)  50:50, detector leg = mode M+1
//             G_n = bs(rail1, M)    50:50, detector leg = mode M
//           The kept legs stay on the old rail indices, so the output rails
//           remain (2, 3) at every level.
//
// Every reflection contributes a factor i; the solved phase shifters absorb
// all of those factors, so targets are met exactly rather than up to phase.

/// Per-photon two-rail target coefficients.
struct TargetPhoton {
  PhotonLabel label;
  Complex alpha1;
  Complex alpha2;
};

struct TargetSpec {
  std::vector<TargetPhoton> photons;

  int size() const { return static_cast<int>(photons.size()); }

  void validate() const {
    if (photons.empty()) throw Error("target needs at least one photon");
    for (std::size_t i = 0; i < photons.size(); ++i) {
      const TargetPhoton& p = photons[i];
      if (!std::isfinite(p.alpha1.real()) || !std::isfinite(p.alpha1.imag()) ||
          !std::isfinite(p.alpha2.real()) || !std::isfinite(p.alpha2.imag()))
        throw Error("non-finite target coefficient");
      const double n2 = std::norm(p.alpha1) + std::norm(p.alpha2);
      if (std::abs(n2 - 1.0) > kTargetNormTol)
        throw NotNormalized("photon " + std::to_string(p.label.index) +
                            ": |alpha1|^2 + |alpha2|^2 = " + std::to_string(n2) +
                            " (must be 1 within 1e-10)");
      for (std::size_t j = i + 1; j < photons.size(); ++j)
        if (photons[j].label == p.label)
          throw LabelCollision("photon label " + std::to_string(p.label.index) +
                               " appears twice");
    }
  }
};

struct NamedStage {
  std::string name;
  StageParams params;
};

/**
 * @brief A circuit together with everything needed to run and read it:
 * named stage settings, injection mode per photon, the two output rails,
 * and the predicted post-selection success probability.
 */
struct SynthesisPlan {
  Circuit circuit;
  std::vector<NamedStage> settings;
  std::pair<int, int> output_rails;                    // (rail-1 mode, rail-2 mode)
  std::vector<std::pair<PhotonLabel, int>> input_modes;
  double predicted_probability = 1.0;

  int num_photons() const { return static_cast<int>(input_modes.size()); }

  const StageParams* find_setting(std::string_view name) const {
    for (const NamedStage& s : settings)
      if (s.name == name) return &s.params;
    return nullptr;
  }
};

/// Success probability of the all-50:50 scheme: 1 for n=1, else 2^{-(n^2+n-2)/2}.
inline double predicted_success_probability(int n) {
  if (n < 1) throw OutOfRange("photon count must be at least 1");
  if (n == 1) return 1.0;
  return std::ldexp(1.0, -((n * n + n - 2) / 2));
}

/**
 * @brief Stage parameters placing one photon into (alpha1, alpha2).
 *
 * theta = arccos|alpha1|; the alpha2 phase compensates the i carried by the
 * reflection.  Phases of zero-amplitude arms are 0 by convention.
 */
struct SingleStageSolution {
  double theta = 0.0;
  double phi_for_alpha1 = 0.0;
  double phi_for_alpha2 = 0.0;
};

inline SingleStageSolution solve_single_stage(Complex alpha1, Complex alpha2) {
  const double n2 = std::norm(alpha1) + std::norm(alpha2);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kTargetNormTol)
    throw NotNormalized("|alpha1|^2 + |alpha2|^2 must be 1 within 1e-10");
  SingleStageSolution sol;
  sol.theta = std::acos(std::clamp(std::abs(alpha1), 0.0, 1.0));
  sol.phi_for_alpha1 = std::cos(sol.theta) == 0.0 ? 0.0 : wrap_angle(std::arg(alpha1));
  sol.phi_for_alpha2 = std::sin(sol.theta) == 0.0 ? 0.0 : wrap_angle(std::arg(alpha2) - kPi / 2.0);
  return sol;
}

namespace detail {

/// Transfer amplitudes of one photon injected at `input_mode`, read at the
/// two rails before any renormalization.
inline std::pair<Complex, Complex> rail_transfer(const Circuit& c, int input_mode,
                                                 std::pair<int, int> rails) {
  std::vector<Complex> v(static_cast<std::size_t>(c.num_modes()), Complex{0.0, 0.0});
  v[static_cast<std::size_t>(input_mode)] = Complex{1.0, 0.0};
  for (const Element& el : c.elements()) apply_element(el, v);
  return {v[static_cast<std::size_t>(rails.first)], v[static_cast<std::size_t>(rails.second)]};
}

/// Phase shifter setting that rotates `achieved` onto the ray of `wanted`.
inline double phase_match(Complex wanted, Complex achieved) {
  if (std::abs(wanted) == 0.0 || std::abs(achieved) == 0.0) return 0.0;
  return wrap_angle(std::arg(wanted) - std::arg(achieved));
}

}  // namespace detail

/// Two-mode stage circuit: bs(0,1,theta) then one phase shifter per arm.
inline Circuit single_photon_circuit(double theta, double phi_rail1, double phi_rail2) {
  Circuit c(2);
  c.add_beam_splitter(0, 1, theta);
  c.add_phase_shift(0, phi_rail1);
  c.add_phase_shift(1, phi_rail2);
  return c;
}

/**
 * @brief The 4-mode two-photon interferometer in the layout documented above.
 *
 * phi1/phi4 sit on photon 1's arms (modes 0/1), phi3/phi2 on photon 2's
 * (modes 2/3).  theta_c and theta_d are the detector-stage angles.
 */
inline Circuit two_photon_circuit(double theta_a, double phi1, double phi4, double theta_b,
                                  double phi3, double phi2,
                                  double theta_c = kDetectorStageTheta,
                                  double theta_d = kDetectorStageTheta) {
  Circuit c(4);
  c.add_beam_splitter(0, 1, theta_a);
  c.add_phase_shift(0, phi1);
  c.add_phase_shift(1, phi4);
  c.add_beam_splitter(2, 3, theta_b);
  c.add_phase_shift(2, phi3);
  c.add_phase_shift(3, phi2);
  c.add_beam_splitter(1, 2, theta_c);
  c.add_beam_splitter(0, 3, theta_d);
  c.add_detector(0);
  c.add_detector(1);
  return c;
}

/// Plan realizing a single photon in (alpha1, alpha2); success probability 1.
inline SynthesisPlan build_single_photon(Complex alpha1, Complex alpha2,
                                         PhotonLabel label = PhotonLabel{1}) {
  const SingleStageSolution sol = solve_single_stage(alpha1, alpha2);
  SynthesisPlan plan{single_photon_circuit(sol.theta, sol.phi_for_alpha1, sol.phi_for_alpha2),
                     {NamedStage{"A", StageParams{sol.theta, sol.phi_for_alpha1, sol.phi_for_alpha2}}},
                     {0, 1},
                     {{label, 0}},
                     1.0};
  return plan;
}

/**
 * @brief Plan realizing a two-photon product target.
 *
 * The input-stage angles come from the target magnitudes; the four phase
 * shifters are solved against the actual zero-phase transfer amplitudes, so
 * every reflection's i lands in a shifter.  With matched 50:50 detector
 * stages the success probability is 1/4 whatever the targets are.
 */
inline SynthesisPlan build_two_photon(const TargetSpec& t,
                                      double theta_c = kDetectorStageTheta,
                                      double theta_d = kDetectorStageTheta) {
  t.validate();
  if (t.size() != 2) throw Error("two-photon builder needs exactly 2 photons");
  const TargetPhoton& p1 = t.photons[0];
  const TargetPhoton& p2 = t.photons[1];

  const double theta_a = std::acos(std::clamp(std::abs(p1.alpha1), 0.0, 1.0));
  const double theta_b = std::acos(std::clamp(std::abs(p2.alpha1), 0.0, 1.0));
  const std::pair<int, int> rails{2, 3};

  const Circuit bare = two_photon_circuit(theta_a, 0.0, 0.0, theta_b, 0.0, 0.0, theta_c, theta_d);
  const auto [t1_rail1, t1_rail2] = detail::rail_transfer(bare, 1, rails);
  const auto [t2_rail1, t2_rail2] = detail::rail_transfer(bare, 2, rails);
  const double phi4 = detail::phase_match(p1.alpha1, t1_rail1);
  const double phi1 = detail::phase_match(p1.alpha2, t1_rail2);
  const double phi3 = detail::phase_match(p2.alpha1, t2_rail1);
  const double phi2 = detail::phase_match(p2.alpha2, t2_rail2);

  SynthesisPlan plan{two_photon_circuit(theta_a, phi1, phi4, theta_b, phi3, phi2, theta_c, theta_d),
                     {NamedStage{"A", StageParams{theta_a, phi1, phi4}},
                      NamedStage{"B", StageParams{theta_b, phi3, phi2}},
                      NamedStage{"C", StageParams{theta_c, 0.0, 0.0}},
                      NamedStage{"D", StageParams{theta_d, 0.0, 0.0}}},
                     rails,
                     {{p1.label, 1}, {p2.label, 2}},
                     0.25};
  if (theta_c != kDetectorStageTheta || theta_d != kDetectorStageTheta) {
    ProductState probe;
    for (const auto& [label, mode] : plan.input_modes) {
      std::vector<Complex> amps(4, Complex{0.0, 0.0});
      amps[static_cast<std::size_t>(mode)] = Complex{1.0, 0.0};
      probe.photons.push_back({label, SinglePhotonState{std::move(amps)}});
    }
    plan.predicted_probability = simulate(plan.circuit, probe).probability;
  }
  return plan;
}

/**
 * @brief Extends a plan by one photon.
 *
 * Appends two modes for the new photon's input stage E_n; 50:50 stages F_n
 * and G_n fold them into the existing rails, and both fresh modes end as the
 * new detector pair.  Every pre-existing photon keeps its state and loses
 * half its norm, the new photon loses half as well, so the success
 * probability picks up a factor 2^-n.
 */
inline SynthesisPlan extend_with_photon(const SynthesisPlan& plan, Complex alpha1,
                                        Complex alpha2, PhotonLabel label) {
  const double n2 = std::norm(alpha1) + std::norm(alpha2);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kTargetNormTol)
    throw NotNormalized("photon " + std::to_string(label.index) +
                        ": |alpha1|^2 + |alpha2|^2 must be 1 within 1e-10");
  for (const auto& [existing, mode] : plan.input_modes)
    if (existing == label)
      throw LabelCollision("photon label " + std::to_string(label.index) + " already used");

  const int old_modes = plan.circuit.num_modes();
  const int e1 = old_modes;
  const int e2 = old_modes + 1;
  const auto [rail1, rail2] = plan.output_rails;
  const double theta_e = std::acos(std::clamp(std::abs(alpha2), 0.0, 1.0));
  const int n = plan.num_photons() + 1;

  auto assemble = [&](double phi5, double phi6) {
    Circuit c(old_modes + 2);
    for (const Element& el : plan.circuit.elements()) c.add(el);
    for (int d : plan.circuit.detector_modes()) c.add_detector(d);
    c.add_beam_splitter(e1, e2, theta_e);
    c.add_phase_shift(e1, phi5);
    c.add_phase_shift(e2, phi6);
    c.add_beam_splitter(rail2, e2, kDetectorStageTheta);  // F_n; detector leg = e2
    c.add_beam_splitter(rail1, e1, kDetectorStageTheta);  // G_n; detector leg = e1
    c.add_detector(e1);
    c.add_detector(e2);
    return c;
  };

  const Circuit bare = assemble(0.0, 0.0);
  const auto [to_rail1, to_rail2] = detail::rail_transfer(bare, e2, plan.output_rails);
  const double phi5 = detail::phase_match(alpha1, to_rail1);
  const double phi6 = detail::phase_match(alpha2, to_rail2);

  SynthesisPlan out{assemble(phi5, phi6),
                    plan.settings,
                    plan.output_rails,
                    plan.input_modes,
                    plan.predicted_probability * std::ldexp(1.0, -n)};
  const std::string level = std::to_string(n);
  out.settings.push_back({"E_" + level, StageParams{theta_e, phi5, phi6}});
  out.settings.push_back({"F_" + level, StageParams{kDetectorStageTheta, 0.0, 0.0}});
  out.settings.push_back({"G_" + level, StageParams{kDetectorStageTheta, 0.0, 0.0}});
  out.input_modes.push_back({label, e2});
  return out;
}

/// Builds the full plan: a lone stage for N=1, the paired-stage interferometer
/// for N=2, then one extension per extra photon.
inline SynthesisPlan synthesize(const TargetSpec& t) {
  t.validate();
  if (t.size() == 1)
    return build_single_photon(t.photons[0].alpha1, t.photons[0].alpha2, t.photons[0].label);
  TargetSpec head{{t.photons[0], t.photons[1]}};
  SynthesisPlan plan = build_two_photon(head);
  for (int k = 2; k < t.size(); ++k)
    plan = extend_with_photon(plan, t.photons[static_cast<std::size_t>(k)].alpha1,
                              t.photons[static_cast<std::size_t>(k)].alpha2,
                              t.photons[static_cast<std::size_t>(k)].label);
  return plan;
}

/// The product state that injects one photon at each documented input mode.
inline ProductState canonical_input(const SynthesisPlan& plan) {
  ProductState input;
  for (const auto& [label, mode] : plan.input_modes) {
    std::vector<Complex> amps(static_cast<std::size_t>(plan.circuit.num_modes()),
                              Complex{0.0, 0.0});
    amps[static_cast<std::size_t>(mode)] = Complex{1.0, 0.0};
    input.photons.push_back({label, SinglePhotonState{std::move(amps)}});
  }
  return input;
}

/// Embeds a target on the given rails of an M-mode circuit.
inline ProductState target_as_product(const TargetSpec& t, std::pair<int, int> rails,
                                      int num_modes) {
  ProductState out;
  for (const TargetPhoton& p : t.photons) {
    std::vector<Complex> amps(static_cast<std::size_t>(num_modes), Complex{0.0, 0.0});
    amps[static_cast<std::size_t>(rails.first)] = p.alpha1;
    amps[static_cast<std::size_t>(rails.second)] = p.alpha2;
    out.photons.push_back({p.label, normalize(amps)});
  }
  return out;
}

struct VerifyReport {
  double fidelity = 0.0;
  double probability = 0.0;
  SynthesisPlan plan;
};

/// Synthesize, simulate, and score the result against the target.
inline VerifyReport verify_target(const TargetSpec& t) {
  SynthesisPlan plan = synthesize(t);
  const PostSelectResult result = simulate(plan.circuit, canonical_input(plan));
  const ProductState wanted = target_as_product(t, plan.output_rails, plan.circuit.num_modes());
  const double fidelity = product_fidelity(result.state, wanted);
  return VerifyReport{fidelity, result.probability, std::move(plan)};
}

}  // namespace railsynth
