// SPDX-License-Identifier: Apache-2.0
#include "noisegates/montecarlo.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace noisegates;
using noisegates::testing::max_abs;

namespace {

CircuitIR noisy_cnot() {
  return build_cnot_scenario(ChannelSpec::single(ChannelKind::BitFlip, 0.2),
                             ChannelSpec::single(ChannelKind::AmplitudeDamping, 0.3), 0.0, 1.0, 2.0);
}

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("ensemble config validation") {
  EnsembleConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_trajectories = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = EnsembleConfig{};
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS(estimate_mean([](std::uint64_t) { return 1.0; }, cfg), std::invalid_argument);
}

TEST_CASE("estimate_mean of a known sequence") {
  EnsembleConfig cfg;
  cfg.n_trajectories = 1001;
  const Estimate e = estimate_mean([](std::uint64_t i) { return static_cast<double>(i); }, cfg);
  CHECK(e.n == 1001);
  CHECK(e.value == doctest::Approx(500.0).epsilon(1e-14));
  // Sample variance of 0..n-1 is n(n+1)/12.
  CHECK(e.std_error == doctest::Approx(std::sqrt(1001.0 * 1002.0 / 12.0 / 1001.0)).epsilon(1e-12));

  cfg.n_trajectories = 1;
  const Estimate one = estimate_mean([](std::uint64_t) { return 3.5; }, cfg);
  CHECK(one.value == 3.5);
  CHECK(one.std_error == 0.0);
}

TEST_CASE("noiseless circuits have zero variance") {
  const CircuitIR c = build_cnot_scenario(ChannelSpec::depolarizing(0.0, 0.0, 0.0),
                                          ChannelSpec::depolarizing(0.0, 0.0, 0.0), 0.0, 1.0, 2.0);
  EnsembleConfig cfg;
  cfg.n_trajectories = 1000;
  const StateVector in = (basis_state(2, 0) + basis_state(2, 2)) / std::sqrt(2.0);
  const StateVector bell = (basis_state(2, 0) + basis_state(2, 3)) / std::sqrt(2.0);
  const std::vector<QubitIndex> keep{0, 1};
  const Estimate f = estimate_fidelity(c, in, bell, keep, cfg);
  CHECK(f.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.std_error < 1e-14);
  const DensityEstimate d = estimate_density_matrix(c, in, keep, cfg);
  CHECK(max_abs(d.mean - outer(bell)) < 1e-14);
  CHECK(d.std_error.maxCoeff() < 1e-14);
  CHECK(d.trace_distance_std_error() < 1e-14);
}

TEST_CASE("results are bitwise identical for any worker count") {
  const CircuitIR c = noisy_cnot();
  const StateVector in = basis_state(2, 2);
  const StateVector target = basis_state(2, 3);
  const std::vector<QubitIndex> keep{0, 1};
  EnsembleConfig cfg;
  cfg.n_trajectories = 3000;  // not a multiple of the block size
  cfg.master_seed = 77;
  cfg.n_workers_hint = 1;
  const Estimate ref = estimate_fidelity(c, in, target, keep, cfg);
  const DensityEstimate dref = estimate_density_matrix(c, in, keep, cfg);
  for (unsigned w : {2u, 3u, 4u}) {
    cfg.n_workers_hint = w;
    const Estimate e = estimate_fidelity(c, in, target, keep, cfg);
    CHECK(bitwise_equal(e.value, ref.value));
    CHECK(bitwise_equal(e.std_error, ref.std_error));
    const DensityEstimate d = estimate_density_matrix(c, in, keep, cfg);
    CHECK(max_abs(d.mean - dref.mean) == 0.0);
    CHECK((d.std_error - dref.std_error).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("fidelity and density estimators are consistent") {
  const CircuitIR c = noisy_cnot();
  const StateVector in = (basis_state(2, 1) + basis_state(2, 2)) / std::sqrt(2.0);
  std::mt19937_64 rng(4);
  const StateVector target = noisegates::testing::random_state(rng, 2);
  EnsembleConfig cfg;
  cfg.n_trajectories = 2000;
  cfg.master_seed = 5;
  const std::vector<QubitIndex> keep{0, 1};
  const Estimate f = estimate_fidelity(c, in, target, keep, cfg);
  const DensityEstimate d = estimate_density_matrix(c, in, keep, cfg);
  CHECK(std::abs(f.value - (target.adjoint() * d.mean * target)(0, 0).real()) < 1e-12);

  // The same through an explicit trajectory function.
  const TrajectoryFn run = circuit_trajectories(c, in, cfg);
  const Estimate g = estimate_fidelity(run, target, keep, cfg);
  CHECK(bitwise_equal(f.value, g.value));
  CHECK(max_abs(run(17) - run_trajectory(c, in, cfg.master_seed, 17, cfg.dt)) == 0.0);
}

TEST_CASE("standard error scales as one over root n") {
  const CircuitIR c = noisy_cnot();
  const StateVector in = basis_state(2, 2);
  const std::vector<QubitIndex> keep{0, 1};
  EnsembleConfig cfg;
  cfg.master_seed = 8;
  cfg.n_trajectories = 4000;
  const double se1 = estimate_fidelity(c, in, basis_state(2, 3), keep, cfg).std_error;
  cfg.n_trajectories = 16000;
  const double se4 = estimate_fidelity(c, in, basis_state(2, 3), keep, cfg).std_error;
  CHECK(se1 / se4 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("phase-flip coherence matches the exact decay") {
  CircuitIR c;
  c.n_qubits = 1;
  c.t_end = 1.5;
  c.segments = {{0, ChannelSpec::single(ChannelKind::PhaseFlip, 0.4), 0.0, 1.5}};
  const StateVector plus = (basis_state(1, 0) + basis_state(1, 1)) / std::sqrt(2.0);
  EnsembleConfig cfg;
  cfg.n_trajectories = 20000;
  cfg.master_seed = 12;
  const std::vector<QubitIndex> keep{0};
  const DensityEstimate d = estimate_density_matrix(c, plus, keep, cfg);
  const double exact = 0.5 * std::exp(-2.0 * 0.4 * 1.5);
  CHECK(std::abs(d.mean(0, 1).real() - exact) < 3.0 * d.std_error(0, 1));
  CHECK(std::abs(d.mean(0, 1).imag()) < 3.0 * d.std_error(0, 1));
  // Flip gates are unitary: the trace is exactly one on every trajectory.
  CHECK(std::abs(d.mean.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("mean trace is one within the standard error for non-unitary gates") {
  CircuitIR c;
  c.n_qubits = 1;
  c.t_end = 2.0;
  c.segments = {{0, ChannelSpec::generalized_amplitude_damping(0.3, 0.2), 0.0, 2.0}};
  EnsembleConfig cfg;
  cfg.n_trajectories = 20000;
  cfg.master_seed = 13;
  cfg.dt = 0.01;
  const StateVector in = (basis_state(1, 0) + Complex(0.0, 1.0) * basis_state(1, 1)) / std::sqrt(2.0);
  const Estimate n2 = estimate_norm_squared(c, in, cfg);
  CHECK(std::abs(n2.value - 1.0) < 3.0 * n2.std_error);
}

TEST_CASE("trajectory failures are reported") {
  EnsembleConfig cfg;
  cfg.n_trajectories = 600;
  cfg.n_workers_hint = 2;
  const std::vector<QubitIndex> keep{0};
  const TrajectoryFn bad = [](std::uint64_t i) -> StateVector {
    StateVector s = basis_state(1, 0);
    if (i == 513) s(0) = std::nan("");
    return s;
  };
  CHECK_THROWS_AS(estimate_density_matrix(bad, keep, cfg), TrajectoryFailure);
  const TrajectoryFn throwing = [](std::uint64_t i) -> StateVector {
    if (i == 5) throw std::runtime_error("boom");
    return basis_state(1, 0);
  };
  CHECK_THROWS_AS(estimate_fidelity(throwing, basis_state(1, 0), keep, cfg), TrajectoryFailure);
  CHECK_THROWS_AS(estimate_mean([](std::uint64_t) { return std::nan(""); }, cfg), TrajectoryFailure);
  const std::vector<QubitIndex> out_of_range{3};
  CHECK_THROWS_AS(estimate_density_matrix(noisy_cnot(), basis_state(2, 0), out_of_range, cfg),
                  std::invalid_argument);
}
