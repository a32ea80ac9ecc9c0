// SPDX-License-Identifier: Apache-2.0
#include "noisegates/analytic.hpp"
#include "noisegates/lindblad.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace noisegates;

namespace {

StateVector pair_state(const EntangledPairCoeffs& p) {
  StateVector s(4);
  s << p.a00, p.a01, p.a10, p.a11;
  return s;
}

// Reference: evolve the pair under the channel on its second qubit, one
// master-equation solve per interval.
double rk4_chain_fidelity(ChannelKind kind, const EntangledPairCoeffs& pair,
                          const ChainCouplings& couplings) {
  const StateVector psi = pair_state(pair);
  DensityMatrix rho = outer(psi);
  for (const auto& iv : couplings.intervals) {
    LindbladSpec spec = empty_lindblad_spec(2);
    add_channel_terms(spec, ChannelSpec{kind, iv.gammas}, 1, 2);
    rho = rk4_evolve(spec, rho, iv.duration, default_rk4_dt(spec, iv.duration));
  }
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

EntangledPairCoeffs random_pair(std::mt19937_64& rng) {
  const StateVector s = noisegates::testing::random_state(rng, 2);
  return {s(0), s(1), s(2), s(3)};
}

ChainCouplings random_couplings(std::mt19937_64& rng, ChannelKind kind, std::size_t n,
                                bool uniform) {
  std::uniform_real_distribution<double> rate(0.0, 0.4), length(0.2, 1.5);
  ChainCouplings c;
  std::vector<double> g(gamma_count(kind));
  for (double& x : g) x = rate(rng);
  for (std::size_t k = 0; k < n; ++k) {
    if (!uniform) {
      for (double& x : g) x = rate(rng);
    }
    c.intervals.push_back({g, uniform ? 1.0 : length(rng)});
  }
  return c;
}

constexpr ChannelKind kAllKinds[] = {ChannelKind::BitFlip,
                                     ChannelKind::PhaseFlip,
                                     ChannelKind::BitPhaseFlip,
                                     ChannelKind::AmplitudeDamping,
                                     ChannelKind::Depolarizing,
                                     ChannelKind::GeneralizedAmplitudeDamping};

}  // namespace

TEST_CASE("pair coefficients") {
  const auto bell = EntangledPairCoeffs::bell();
  CHECK(bell.A() == doctest::Approx(0.5));
  CHECK(std::abs(bell.B()) < 1e-15);
  const auto l = EntangledPairCoeffs::lambda_family(0.3);
  CHECK(l.A() == doctest::Approx(0.7));
  CHECK(std::abs(l.B()) < 1e-15);
  const EntangledPairCoeffs g{0.6, Complex(0.3, 0.4), 0.2, std::sqrt(0.35)};
  CHECK(g.A() == doctest::Approx(0.4));
  CHECK(std::abs(g.B() - (0.6 * Complex(0.3, 0.4) + 0.2 * std::sqrt(0.35))) < 1e-15);
  CHECK(EntangledPairCoeffs::from_array(g.to_array()).a01 == g.a01);
  CHECK_THROWS_AS(EntangledPairCoeffs::lambda_family(1.5), std::invalid_argument);
  CHECK_THROWS_AS((EntangledPairCoeffs{1.0, 1.0, 0.0, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("chain couplings aggregates") {
  ChainCouplings c;
  c.intervals = {{{0.1, 0.2, 0.3}, 2.0}, {{0.5, 0.0, 1.0}, 0.5}};
  CHECK(c.aggregate(0) == doctest::Approx(0.45));
  CHECK(c.aggregate(2) == doctest::Approx(1.1));
  CHECK(c.aggregate_pair(0, 2) == doctest::Approx(1.55));
  CHECK(c.total_time() == doctest::Approx(2.5));
  c.intervals[1].duration = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("noisy cnot formula") {
  CHECK(flip_persistence(0.0, 3.0) == 1.0);
  CHECK(flip_persistence(0.5, 1.0) == doctest::Approx(0.5 * (1.0 + std::exp(-1.0))));
  // Equal couplings and intervals reduce to the cubic in p.
  for (double gT : {0.0, 0.05, 0.3, 1.0, 4.0}) {
    const double p = flip_persistence(gT, 1.0);
    CHECK(fidelity_cnot_bitflip(gT, gT, 1.0, 1.0) ==
          doctest::Approx(fidelity_cnot_bitflip_symmetric(p)).epsilon(1e-14));
    CHECK(fidelity_cnot_bitflip_symmetric(p) ==
          doctest::Approx(p * p * p * p + 2.0 * p * std::pow(1.0 - p, 3) + p * p * std::pow(1.0 - p, 2))
              .epsilon(1e-14));
  }
  CHECK(fidelity_cnot_bitflip(0.0, 0.0, 1.0, 1.0) == 1.0);
  CHECK(std::abs(fidelity_cnot_bitflip(2.0, 2.0, 25.0, 25.0) - 0.25) < 1e-12);
  CHECK_THROWS_AS(fidelity_cnot_bitflip(-0.1, 0.1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("noisy cnot formula agrees with the master equation") {
  const Gate4 cnot = gates::cnot();
  const StateVector in = basis_state(2, 0);
  for (auto [g1, g2, T1, T2] : {std::array{0.1, 0.3, 1.0, 2.0}, std::array{0.5, 0.05, 0.4, 1.5},
                                std::array{0.2, 0.2, 1.0, 1.0}}) {
    LindbladSpec spec = empty_lindblad_spec(2);
    add_channel_terms(spec, ChannelSpec::single(ChannelKind::BitFlip, g1), 0, 2);
    add_channel_terms(spec, ChannelSpec::single(ChannelKind::BitFlip, g2), 1, 2);
    DensityMatrix rho = rk4_evolve(spec, outer(in), T1, 1e-3);
    rho = cnot * rho * cnot.adjoint();
    rho = rk4_evolve(spec, rho, T2, 1e-3);
    const StateVector target = cnot * in;
    const double F = (target.adjoint() * rho * target)(0, 0).real();
    CHECK(std::abs(F - fidelity_cnot_bitflip(g1, g2, T1, T2)) < 1e-10);
  }
}

TEST_CASE("chain formulas: noiseless limit and range") {
  std::mt19937_64 rng(10);
  for (ChannelKind kind : kAllKinds) {
    CAPTURE(to_string(kind));
    const auto pair = random_pair(rng);
    const ChainCouplings none = ChainCouplings::uniform(3, std::vector<double>(gamma_count(kind), 0.0), 1.0);
    CHECK(fidelity_chain(kind, pair, none) == doctest::Approx(1.0).epsilon(1e-14));
    for (int trial = 0; trial < 20; ++trial) {
      const double F = fidelity_chain(kind, pair, random_couplings(rng, kind, 4, true));
      CHECK(F >= -1e-12);
      CHECK(F <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("chain formulas are non-increasing in time for uniform couplings") {
  std::mt19937_64 rng(11);
  for (ChannelKind kind : kAllKinds) {
    CAPTURE(to_string(kind));
    for (int trial = 0; trial < 5; ++trial) {
      const auto pair = random_pair(rng);
      const auto c = random_couplings(rng, kind, 1, true);
      double prev = 1.0;
      for (int k = 1; k <= 40; ++k) {
        const double F = fidelity_chain(kind, pair, ChainCouplings::uniform(1, c.intervals[0].gammas, 0.25 * k));
        CHECK(F <= prev + 1e-12);
        prev = F;
      }
    }
  }
}

TEST_CASE("chain formulas agree with the contracted moment tables") {
  std::mt19937_64 rng(12);
  for (ChannelKind kind : kAllKinds) {
    CAPTURE(to_string(kind));
    const bool uniform = kind == ChannelKind::GeneralizedAmplitudeDamping;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto pair = random_pair(rng);
      const auto c = random_couplings(rng, kind, 5, uniform);
      worst = std::max(worst, std::abs(fidelity_chain(kind, pair, c) -
                                       fidelity_from_moments(pair, chain_moments(kind, c))));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("chain formulas agree with the master equation") {
  std::mt19937_64 rng(13);
  for (ChannelKind kind : kAllKinds) {
    CAPTURE(to_string(kind));
    const bool uniform = kind == ChannelKind::GeneralizedAmplitudeDamping;
    for (int trial = 0; trial < 6; ++trial) {
      const auto pair = trial == 0 ? EntangledPairCoeffs::bell() : random_pair(rng);
      const auto c = random_couplings(rng, kind, 3, uniform);
      CHECK(std::abs(fidelity_chain(kind, pair, c) - rk4_chain_fidelity(kind, pair, c)) < 1e-8);
    }
  }
}

TEST_CASE("amplitude damping on a Bell pair") {
  for (double G : {0.0, 0.2, 1.0, 3.0}) {
    const double head = 0.5 + 0.5 * std::exp(-G / 2.0);
    CHECK(fidelity_chain_amplitude_damping(EntangledPairCoeffs::bell(), G) ==
          doctest::Approx(head * head));
  }
}

TEST_CASE("flip asymmetries") {
  const EntangledPairCoeffs p{0.6, Complex(0.3, 0.4), 0.2, std::sqrt(0.35)};
  const Complex B = p.B();
  CHECK(flip_asymmetry(ChannelKind::BitFlip, p) == doctest::Approx(2.0 * B.real()));
  CHECK(flip_asymmetry(ChannelKind::PhaseFlip, p) == doctest::Approx(-0.2));
  CHECK(flip_asymmetry(ChannelKind::BitPhaseFlip, p) == doctest::Approx(2.0 * B.imag()));
  CHECK_THROWS_AS(flip_asymmetry(ChannelKind::AmplitudeDamping, p), std::invalid_argument);
  // A state with |g| = 1 is a fixed point.
  const EntangledPairCoeffs plus{std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0};
  CHECK(fidelity_chain_flip(ChannelKind::BitFlip, plus, 5.0) == doctest::Approx(1.0));
}

TEST_CASE("depolarizing with one active axis reduces to the flip formula") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pair = random_pair(rng);
    const double G = 0.1 * trial;
    CHECK(fidelity_chain_depolarizing(pair, G, G, 0.0) ==
          doctest::Approx(fidelity_chain_flip(ChannelKind::BitFlip, pair, G)).epsilon(1e-12));
    CHECK(fidelity_chain_depolarizing(pair, G, 0.0, G) ==
          doctest::Approx(fidelity_chain_flip(ChannelKind::BitPhaseFlip, pair, G)).epsilon(1e-12));
    CHECK(fidelity_chain_depolarizing(pair, 0.0, G, G) ==
          doctest::Approx(fidelity_chain_flip(ChannelKind::PhaseFlip, pair, G)).epsilon(1e-12));
  }
}

TEST_CASE("generalized amplitude damping") {
  const auto pair = EntangledPairCoeffs::lambda_family(0.25);
  // Long-time limit: the transmitted qubit relaxes to the stationary mixture.
  const double A = pair.A();
  CHECK(fidelity_chain_gen_amp_damping(pair, 0.3, 0.1, 200.0) ==
        doctest::Approx(A * A * 0.75 + (1 - A) * (1 - A) * 0.25).epsilon(1e-12));
  CHECK(fidelity_chain_gen_amp_damping(pair, 0.0, 0.0, 5.0) == 1.0);
  // No excitation reduces to amplitude damping.
  CHECK(fidelity_chain_gen_amp_damping(pair, 0.4, 0.0, 2.0) ==
        doctest::Approx(fidelity_chain_amplitude_damping(pair, 0.8)).epsilon(1e-12));

  ChainCouplings mixed;
  mixed.intervals = {{{0.1, 0.2}, 1.0}, {{0.2, 0.2}, 1.0}};
  CHECK_THROWS_AS(fidelity_chain(ChannelKind::GeneralizedAmplitudeDamping, pair, mixed),
                  std::invalid_argument);
  CHECK(fidelity_chain(ChannelKind::GeneralizedAmplitudeDamping, pair, ChainCouplings{}) == 1.0);
}
