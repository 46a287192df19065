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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace railsynth {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance on normalization and unitarity postconditions.
inline constexpr double kNormTol = 1e-12;
/// Looser tolerance applied to user-supplied target coefficients.
inline constexpr double kTargetNormTol = 1e-10;
/// Below this squared norm, renormalizing a post-selected state is meaningless.
inline constexpr double kVanishingNorm = 1e-15;
/// Unitarity required of matrices handed to the fitting routines.
inline constexpr double kUnitaryTol = 1e-10;
/// Angle of the 50:50 splitters sitting in front of every detector pair.
inline constexpr double kDetectorStageTheta = kPi / 4.0;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroVector : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct EmptyList : Error { using Error::Error; };
struct LabelMismatch : Error { using Error::Error; };
struct LabelCollision : Error { using Error::Error; };
struct ModeOutOfRange : Error { using Error::Error; };
struct VanishingProbability : Error { using Error::Error; };
struct StateTooLarge : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct CircuitError : Error { using Error::Error; };

/// Parse failure carrying a 1-based source position (0 when unknown).
struct Diagnostic : Error {
  int line;
  int column;
  Diagnostic(int line_, int column_, const std::string& message)
      : Error(message), line(line_), column(column_) {}
};

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // rounding of w + 2*pi can land exactly on the period
  return w;
}

/**
 * @brief splitmix64 generator.
 *
 * Seeded experiments must reproduce bit-identically, so raw 64-bit output is
 * mapped to doubles by hand instead of going through <random> distributions
 * (whose results are implementation-defined).
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace railsynth
