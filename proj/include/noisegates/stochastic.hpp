// SPDX-License-Identifier: Apache-2.0
//
// Reproducible Gaussian sampling keyed by (seed, trajectory, qubit, component,
// segment), and the Euler-Maruyama integrator for the linear unraveling
//
//   d|psi> = [-i H dt + sum_k (i sqrt(g_k) L_k dW_k - g_k/2 L_k^dag L_k dt)] |psi>.
#pragma once

#include "noisegates/open_system.hpp"
#include "noisegates/qstate.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace noisegates {

/// Identifies one independent Wiener process. `segment` separates disjoint
/// time intervals of the same (qubit, component) so that their increments are
/// independent draws.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t trajectory = 0;
  std::uint32_t qubit = 0;
  std::uint32_t component = 0;
  std::uint32_t segment = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t n_steps = 1;

  double dt() const { return (t_end - t_start) / static_cast<double>(n_steps); }
  void validate() const;

  /// Uniform grid over [t0, t1] whose step does not exceed max_dt.
  static TimeGrid covering(double t0, double t1, double max_dt);
};

/// Standard normal draw number `index` of the stream. Pure function of its
/// arguments.
double standard_normal(const StreamKey& key, std::uint64_t index);

/// Increment W(t+dt) - W(t) ~ Normal(0, dt) for step `step_index`.
double sample_wiener_increment(const StreamKey& key, std::uint64_t step_index, double dt);

/// sqrt(g) * int_{t0}^{t} exp(-g (s - t0) / 2) dW_s, drawn from its exact law
/// Normal(0, 1 - exp(-g (t - t0))).
double sample_ito_exponential_integral(const StreamKey& key, double gamma, double t0, double t,
                                       std::uint64_t index = 0);

/// Euler-Maruyama step operators precomputed from a spec.
struct EulerMaruyamaOperators {
  Eigen::MatrixXcd drift;               // -iH - 1/2 sum g L^dag L
  std::vector<Eigen::MatrixXcd> noise;  // i sqrt(g) L, one per Lindblad term

  explicit EulerMaruyamaOperators(const SDESpec& spec);
};

/// Euler-Maruyama integration of the linear SDE. Returns the unnormalized
/// final state; one key per Lindblad term.
StateVector integrate_sde(const SDESpec& spec, const StateVector& psi0, const TimeGrid& grid,
                          std::span<const StreamKey> keys);

/// Same integration applied to the identity: the sampled propagator N(t_end, t_start).
Eigen::MatrixXcd integrate_sde_propagator(const SDESpec& spec, const TimeGrid& grid,
                                          std::span<const StreamKey> keys);

/// Fixed-size kernel used for single-qubit noise segments. `state` may be a
/// vector or a matrix of column states; all columns see the same noise.
template <typename Matrix, typename State>
void euler_maruyama_apply(const Matrix& drift, std::span<const Matrix> noise,
                          const TimeGrid& grid, std::span<const StreamKey> keys, State& state) {
  if (noise.size() != keys.size()) {
    throw std::invalid_argument("euler_maruyama: need one stream key per noise term");
  }
  const double dt = grid.dt();
  const auto n = static_cast<Eigen::Index>(drift.rows());
  Matrix step(n, n);
  for (std::size_t s = 0; s < grid.n_steps; ++s) {
    step.setIdentity();
    step.noalias() += dt * drift;
    for (std::size_t k = 0; k < noise.size(); ++k) {
      step.noalias() += sample_wiener_increment(keys[k], s, dt) * noise[k];
    }
    state = (step * state).eval();
  }
}

}  // namespace noisegates
