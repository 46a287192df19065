#include <catch2/catch.hpp>

#include "railsynth/circuit.hpp"
#include "railsynth/synth.hpp"

#include "../support.hpp"

using namespace railsynth;

namespace {

ProductState one_photon_at(int mode, int num_modes, int label = 1) {
  std::vector<Complex> amps(static_cast<std::size_t>(num_modes), Complex{0.0, 0.0});
  amps[static_cast<std::size_t>(mode)] = Complex{1.0, 0.0};
  ProductState p;
  p.photons.push_back({PhotonLabel{label}, SinglePhotonState{std::move(amps)}});
  return p;
}

Complex refl(double theta) { return Complex{0.0, std::sin(theta)}; }
Complex trans(double theta) { return Complex{std::cos(theta), 0.0}; }

}  // namespace

TEST_CASE("an empty element list leaves the input unchanged", "[circuit]") {
  Rng rng(31);
  const ProductState in = testsupport::random_product(rng, 2, 3);
  const Circuit c(3);
  const ProductState out = apply_circuit(c, in);
  for (int k = 0; k < 2; ++k)
    for (int m = 0; m < 3; ++m)
      CHECK(std::abs(out.photons[k].state.amps[m] - in.photons[k].state.amps[m]) < 1e-15);
}

TEST_CASE("a single splitter maps one column of its matrix", "[circuit]") {
  const double theta = 0.7;
  Circuit c(2);
  c.add_beam_splitter(0, 1, theta);
  const ProductState out = apply_circuit(c, one_photon_at(1, 2));
  CHECK(std::abs(out.photons[0].state.amps[0] - refl(theta)) < 1e-15);
  CHECK(std::abs(out.photons[0].state.amps[1] - trans(theta)) < 1e-15);
}

TEST_CASE("two-photon interferometer pre-detection amplitudes", "[circuit]") {
  Rng rng(32);
  for (int rep = 0; rep < 10; ++rep) {
    const double ta = rng.uniform(0.0, kPi / 2.0);
    const double tb = rng.uniform(0.0, kPi / 2.0);
    const double tc = rng.uniform(0.0, kPi / 2.0);
    const double td = rng.uniform(0.0, kPi / 2.0);
    const double phi1 = rng.uniform(0.0, kTwoPi);
    const double phi2 = rng.uniform(0.0, kTwoPi);
    const double phi3 = rng.uniform(0.0, kTwoPi);
    const double phi4 = rng.uniform(0.0, kTwoPi);
    const Circuit c = two_photon_circuit(ta, phi1, phi4, tb, phi3, phi2, tc, td);

    // photon 1 enters mode 1 (arm a2); modes are (d2, c1, c2, d1)
    const ProductState p1 = apply_circuit(c, one_photon_at(1, 4));
    const auto& a = p1.photons[0].state.amps;
    CHECK(std::abs(a[2] - std::polar(1.0, phi4) * trans(ta) * refl(tc)) < 1e-12);
    CHECK(std::abs(a[1] - std::polar(1.0, phi4) * trans(ta) * trans(tc)) < 1e-12);
    CHECK(std::abs(a[3] - std::polar(1.0, phi1) * refl(ta) * refl(td)) < 1e-12);
    CHECK(std::abs(a[0] - std::polar(1.0, phi1) * refl(ta) * trans(td)) < 1e-12);

    // photon 2 enters mode 2 (arm b2)
    const ProductState p2 = apply_circuit(c, one_photon_at(2, 4, 2));
    const auto& b = p2.photons[0].state.amps;
    CHECK(std::abs(b[1] - std::polar(1.0, phi3) * trans(tb) * refl(tc)) < 1e-12);
    CHECK(std::abs(b[2] - std::polar(1.0, phi3) * trans(tb) * trans(tc)) < 1e-12);
    CHECK(std::abs(b[3] - std::polar(1.0, phi2) * refl(tb) * trans(td)) < 1e-12);
    CHECK(std::abs(b[0] - std::polar(1.0, phi2) * refl(tb) * refl(td)) < 1e-12);
  }
}

TEST_CASE("pre-detection evolution preserves each photon's norm", "[circuit]") {
  Rng rng(33);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = rng.uniform_int(2, 6);
    const Circuit c = testsupport::random_circuit(rng, m, 10, 0);
    const ProductState out = apply_circuit(c, testsupport::random_product(rng, 2, m));
    for (const auto& ph : out.photons)
      CHECK(std::abs(squared_norm(ph.state.amps) - 1.0) < 1e-12);
  }
}

TEST_CASE("post_select leaves detector-free states alone", "[circuit]") {
  ProductState p;
  p.photons.push_back({PhotonLabel{1}, normalize({Complex{0.6, 0.0}, Complex{0.8, 0.0},
                                                  Complex{0.0, 0.0}})});
  const PostSelectResult r = post_select(p, {2});
  CHECK(r.probability == Approx(1.0).margin(1e-12));
  CHECK(std::abs(r.state.photons[0].state.amps[0] - Complex{0.6, 0.0}) < 1e-12);
  CHECK(std::abs(r.state.photons[0].state.amps[1] - Complex{0.8, 0.0}) < 1e-12);
}

TEST_CASE("post_select on a 50:50 split keeps half the norm", "[circuit]") {
  Circuit c(2);
  c.add_beam_splitter(0, 1, kPi / 4.0);
  const ProductState evolved = apply_circuit(c, one_photon_at(1, 2));
  const PostSelectResult r = post_select(evolved, {0});
  CHECK(r.probability == Approx(0.5).margin(1e-12));
  CHECK(std::abs(std::abs(r.state.photons[0].state.amps[1]) - 1.0) < 1e-12);
}

TEST_CASE("post_select rejects fully absorbed photons", "[circuit]") {
  ProductState p;
  p.photons.push_back({PhotonLabel{1}, normalize({Complex{1.0, 0.0}, Complex{0.0, 0.0}})});
  CHECK_THROWS_AS(post_select(p, {0}), VanishingProbability);
}

TEST_CASE("simulate without detectors succeeds with probability 1", "[circuit]") {
  Rng rng(34);
  const Circuit c = testsupport::random_circuit(rng, 4, 8, 0);
  const PostSelectResult r = simulate(c, testsupport::random_product(rng, 2, 4));
  CHECK(r.probability == 1.0);
}

TEST_CASE("matched 50:50 detector stages keep exactly a quarter", "[circuit]") {
  Rng rng(35);
  for (int rep = 0; rep < 10; ++rep) {
    const Circuit c = two_photon_circuit(rng.uniform(0.0, kPi / 2.0), rng.uniform(0.0, kTwoPi),
                                         rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kPi / 2.0),
                                         rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi));
    ProductState in;
    in.photons.push_back(one_photon_at(1, 4, 1).photons[0]);
    in.photons.push_back(one_photon_at(2, 4, 2).photons[0]);
    CHECK(simulate(c, in).probability == Approx(0.25).margin(1e-12));
  }
}

TEST_CASE("element order matters exactly where modes overlap", "[circuit]") {
  const ProductState in = one_photon_at(0, 3);

  Circuit overlap_ab(3);
  overlap_ab.add_beam_splitter(0, 1, 0.5);
  overlap_ab.add_phase_shift(0, 1.1);
  Circuit overlap_ba(3);
  overlap_ba.add_phase_shift(0, 1.1);
  overlap_ba.add_beam_splitter(0, 1, 0.5);
  const auto out_ab = apply_circuit(overlap_ab, in).photons[0].state.amps;
  const auto out_ba = apply_circuit(overlap_ba, in).photons[0].state.amps;
  double diff = 0.0;
  for (int m = 0; m < 3; ++m) diff = std::max(diff, std::abs(out_ab[m] - out_ba[m]));
  CHECK(diff > 1e-3);

  Circuit disjoint_ab(3);
  disjoint_ab.add_beam_splitter(0, 1, 0.5);
  disjoint_ab.add_phase_shift(2, 1.1);
  Circuit disjoint_ba(3);
  disjoint_ba.add_phase_shift(2, 1.1);
  disjoint_ba.add_beam_splitter(0, 1, 0.5);
  const auto out1 = apply_circuit(disjoint_ab, in).photons[0].state.amps;
  const auto out2 = apply_circuit(disjoint_ba, in).photons[0].state.amps;
  for (int m = 0; m < 3; ++m) CHECK(std::abs(out1[m] - out2[m]) < 1e-12);
}

TEST_CASE("circuit construction validates modes and the absorbing rule", "[circuit]") {
  Circuit c(3);
  CHECK_THROWS_AS(c.add_beam_splitter(0, 3, 0.2), ModeOutOfRange);
  CHECK_THROWS_AS(c.add_beam_splitter(1, 1, 0.2), CircuitError);
  c.add_detector(2);
  CHECK_THROWS_AS(c.add_phase_shift(2, 0.3), CircuitError);
  CHECK_THROWS_AS(c.add_beam_splitter(1, 2, 0.3), CircuitError);
  CHECK_THROWS_AS(c.add_detector(2), CircuitError);
  c.add_beam_splitter(0, 1, 0.4);  // modes away from the detector stay usable

  const ProductState in = one_photon_at(0, 2);
  Circuit wrong(4);
  wrong.add_beam_splitter(0, 1, 0.1);
  CHECK_THROWS_AS(apply_circuit(wrong, in), ModeOutOfRange);
}
