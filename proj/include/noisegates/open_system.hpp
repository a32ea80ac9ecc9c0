// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <vector>

namespace noisegates {

struct LindbladTerm {
  Eigen::MatrixXcd op;
  double gamma = 0.0;  // 1/time
};

/// Hamiltonian (hbar = 1) plus weighted Lindblad operators. Drives both the
/// master equation and its linear stochastic unraveling.
struct LindbladSpec {
  Eigen::MatrixXcd hamiltonian;
  std::vector<LindbladTerm> lindblads;

  Eigen::Index dim() const { return hamiltonian.rows(); }

  /// Throws std::invalid_argument on non-square/mismatched operators,
  /// non-Hermitian H (tolerance 1e-10) or negative rates.
  void validate() const;

  double max_gamma() const;
};

using SDESpec = LindbladSpec;

}  // namespace noisegates
