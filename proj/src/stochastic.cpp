// SPDX-License-Identifier: Apache-2.0
#include "noisegates/stochastic.hpp"

#include "noisegates/philox.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace noisegates {

void LindbladSpec::validate() const {
  const auto n = hamiltonian.rows();
  if (n < 1 || hamiltonian.cols() != n) {
    throw std::invalid_argument("Hamiltonian must be a non-empty square matrix");
  }
  if (hermiticity_residual(hamiltonian) > 1e-10) {
    throw std::invalid_argument("Hamiltonian is not Hermitian");
  }
  for (const auto& term : lindblads) {
    if (term.op.rows() != n || term.op.cols() != n) {
      throw std::invalid_argument("Lindblad operator dimension does not match the Hamiltonian");
    }
    if (!(term.gamma >= 0.0) || !std::isfinite(term.gamma)) {
      throw std::invalid_argument("Lindblad rate must be finite and non-negative");
    }
  }
}

double LindbladSpec::max_gamma() const {
  double g = 0.0;
  for (const auto& term : lindblads) g = std::max(g, term.gamma);
  return g;
}

void TimeGrid::validate() const {
  if (!(t_end >= t_start)) throw std::invalid_argument("time grid: t_end < t_start");
  if (n_steps < 1) throw std::invalid_argument("time grid: need at least one step");
}

TimeGrid TimeGrid::covering(double t0, double t1, double max_dt) {
  if (!(max_dt > 0.0)) throw std::invalid_argument("time grid: max_dt must be positive");
  if (!(t1 >= t0)) throw std::invalid_argument("time grid: t_end < t_start");
  const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / max_dt - 1e-12));
  return TimeGrid{t0, t1, std::max<std::size_t>(steps, 1)};
}

namespace {

constexpr std::uint64_t kMax32 = 0xFFFFFFFFull;

Philox4x32::Counter counter_for(const StreamKey& key, std::uint64_t index) {
  if (index > kMax32) throw std::out_of_range("stream index exceeds 2^32 - 1");
  if (key.trajectory > kMax32) throw std::out_of_range("trajectory index exceeds 2^32 - 1");
  if (key.qubit >= (1u << 24)) throw std::out_of_range("stream qubit index exceeds 2^24 - 1");
  if (key.component >= (1u << 8)) throw std::out_of_range("stream component exceeds 255");
  return {static_cast<std::uint32_t>(index), key.segment,
          static_cast<std::uint32_t>(key.trajectory), (key.qubit << 8) | key.component};
}

// (0, 1], 53 bits of resolution.
double open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

}  // namespace

double standard_normal(const StreamKey& key, std::uint64_t index) {
  const Philox4x32::Key k{static_cast<std::uint32_t>(key.master_seed),
                          static_cast<std::uint32_t>(key.master_seed >> 32)};
  const auto r = Philox4x32::generate(counter_for(key, index), k);
  const double u1 = open_unit(r[0], r[1]);
  const double u2 = open_unit(r[2], r[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_wiener_increment(const StreamKey& key, std::uint64_t step_index, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("Wiener increment: negative dt");
  if (dt == 0.0) return 0.0;
  return std::sqrt(dt) * standard_normal(key, step_index);
}

double sample_ito_exponential_integral(const StreamKey& key, double gamma, double t0, double t,
                                       std::uint64_t index) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("Ito integral: negative gamma");
  if (!(t >= t0)) throw std::invalid_argument("Ito integral: t < t0");
  const double variance = -std::expm1(-gamma * (t - t0));
  if (variance == 0.0) return 0.0;
  return std::sqrt(variance) * standard_normal(key, index);
}

EulerMaruyamaOperators::EulerMaruyamaOperators(const SDESpec& spec) {
  spec.validate();
  const Complex i(0.0, 1.0);
  drift = -i * spec.hamiltonian;
  for (const auto& term : spec.lindblads) {
    drift -= 0.5 * term.gamma * (term.op.adjoint() * term.op);
    noise.emplace_back(i * std::sqrt(term.gamma) * term.op);
  }
}

namespace {

void check_keys(const SDESpec& spec, std::span<const StreamKey> keys) {
  if (keys.size() != spec.lindblads.size()) {
    throw std::invalid_argument("integrate_sde: " + std::to_string(keys.size()) +
                                " stream keys for " + std::to_string(spec.lindblads.size()) +
                                " Lindblad terms");
  }
}

}  // namespace

StateVector integrate_sde(const SDESpec& spec, const StateVector& psi0, const TimeGrid& grid,
                          std::span<const StreamKey> keys) {
  grid.validate();
  check_keys(spec, keys);
  const EulerMaruyamaOperators ops(spec);
  if (psi0.size() != ops.drift.rows()) {
    throw std::invalid_argument("integrate_sde: state dimension does not match the spec");
  }
  StateVector psi = psi0;
  euler_maruyama_apply<Eigen::MatrixXcd>(ops.drift, ops.noise, grid, keys, psi);
  return psi;
}

Eigen::MatrixXcd integrate_sde_propagator(const SDESpec& spec, const TimeGrid& grid,
                                          std::span<const StreamKey> keys) {
  grid.validate();
  check_keys(spec, keys);
  const EulerMaruyamaOperators ops(spec);
  Eigen::MatrixXcd prop = Eigen::MatrixXcd::Identity(ops.drift.rows(), ops.drift.rows());
  euler_maruyama_apply<Eigen::MatrixXcd>(ops.drift, ops.noise, grid, keys, prop);
  return prop;
}

}  // namespace noisegates
