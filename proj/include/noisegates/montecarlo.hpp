// SPDX-License-Identifier: Apache-2.0
//
// Ensemble averages over trajectories. Trajectories are processed in fixed
// blocks and reduced in block order, so results are bitwise identical for any
// worker count.
#pragma once

#include "noisegates/circuit.hpp"
#include "noisegates/qstate.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

namespace noisegates {

struct EnsembleConfig {
  std::size_t n_trajectories = 10000;
  std::uint64_t master_seed = 0;
  double dt = 0.01;
  unsigned n_workers_hint = 0;  // 0: hardware concurrency

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
};

struct DensityEstimate {
  DensityMatrix mean;
  Eigen::MatrixXd std_error;  // per entry, sqrt(E|x - mean|^2 / n) with n - 1 normalization
  std::size_t n = 0;

  /// Standard-error scale for a trace distance against a fixed matrix:
  /// (sqrt(d) / 2) * ||std_error||_F, the Frobenius bound on (1/2)||.||_1.
  double trace_distance_std_error() const;
};

/// A per-trajectory computation failed or produced a non-finite state.
class TrajectoryFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TrajectoryFn = std::function<StateVector(std::uint64_t trajectory)>;
using SampleFn = std::function<double(std::uint64_t trajectory)>;

/// Mean and standard error of sample(0), ..., sample(n - 1).
Estimate estimate_mean(const SampleFn& sample, const EnsembleConfig& cfg);

/// Mean reduced density matrix of the unnormalized trajectory states.
DensityEstimate estimate_density_matrix(const TrajectoryFn& run,
                                        std::span<const QubitIndex> keep,
                                        const EnsembleConfig& cfg);
DensityEstimate estimate_density_matrix(const CircuitIR& c, const StateVector& input,
                                        std::span<const QubitIndex> keep,
                                        const EnsembleConfig& cfg);

/// Mean of <target| Tr_rest |psi><psi| |target> over trajectories.
Estimate estimate_fidelity(const TrajectoryFn& run, const StateVector& target,
                           std::span<const QubitIndex> keep, const EnsembleConfig& cfg);
Estimate estimate_fidelity(const CircuitIR& c, const StateVector& input,
                           const StateVector& target, std::span<const QubitIndex> keep,
                           const EnsembleConfig& cfg);

/// Mean squared norm of the final trajectory state.
Estimate estimate_norm_squared(const CircuitIR& c, const StateVector& input,
                               const EnsembleConfig& cfg);

/// Trajectory function for a circuit; validates the circuit once up front.
TrajectoryFn circuit_trajectories(const CircuitIR& c, const StateVector& input,
                                  const EnsembleConfig& cfg);

}  // namespace noisegates
