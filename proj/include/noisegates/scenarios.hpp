// SPDX-License-Identifier: Apache-2.0
//
// Scenario runner behind the command-line tool: parameter sweeps over the
// noisy-CNOT and spin-chain circuits (or a user circuit), with analytic and
// Monte Carlo fidelity columns, and CSV/JSON emission.
#pragma once

#include "noisegates/analytic.hpp"
#include "noisegates/circuit.hpp"
#include "noisegates/montecarlo.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace noisegates {

enum class ScenarioKind { Cnot, SpinChain, Custom };

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view name);

enum class CouplingProfile { Uniform, Gaussian };

std::string_view to_string(CouplingProfile profile);
CouplingProfile parse_coupling_profile(std::string_view name);

/// `steps` equally spaced points from min to max; a single step gives {min}.
struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 11;

  std::vector<double> values() const;
  void validate() const;
};

struct RunManifest {
  ScenarioKind scenario = ScenarioKind::SpinChain;
  ChannelSpec channel = ChannelSpec::single(ChannelKind::AmplitudeDamping, 0.1);

  /// Spin chain: chain length n (n + 1 qubits) and the spacing of the swaps.
  int n = 4;
  double interval = 1.0;
  /// Gaussian profile: gammas[i] is the peak of component i at `center`, with
  /// variance covariances[i] over the qubit index.
  CouplingProfile profile = CouplingProfile::Uniform;
  std::vector<double> covariances;
  std::optional<double> center;
  bool qubit0_noise = true;

  /// Spin chain: lambda of sqrt(l)|01> + sqrt(1 - l)|10>.
  SweepAxis lambda{"lambda", 0.0, 1.0, 11};
  /// Spin chain: elapsed time since t_0. CNOT: length of each noisy interval.
  SweepAxis time{"time", 0.0, 4.0, 11};

  EnsembleConfig ensemble;
  /// Unset: Monte Carlo columns whenever the register is small enough.
  std::optional<bool> monte_carlo;
  bool timing = false;

  /// Custom scenario only.
  std::optional<CircuitIR> circuit;

  /// Throws std::invalid_argument on the first inconsistency.
  void validate() const;
  bool monte_carlo_enabled() const;
  int register_qubits() const;
};

/// Largest register for which Monte Carlo columns are produced.
inline constexpr int kMaxMonteCarloQubits = 13;

/// Default couplings of a channel kind when none are given on the command line.
std::vector<double> default_gammas(ChannelKind kind, CouplingProfile profile);

/// Per-qubit couplings (qubits 0..n) of a spin-chain manifest.
std::vector<std::vector<double>> chain_coupling_table(const RunManifest& m);

/// The spin-chain scenario of a manifest for one lambda value.
SpinChainScenario spinchain_for(const RunManifest& m, double lambda);

/// Couplings seen by the transmitted qubit from t_0 to t_0 + elapsed.
ChainCouplings chain_couplings_until(const SpinChainScenario& s, double elapsed);

/// Rows of nullable numbers under fixed column names.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

/// Runs the sweep. Throws std::invalid_argument for an invalid manifest and
/// TrajectoryFailure when a trajectory fails.
ResultTable run_scenario(const RunManifest& m);

/// Header line plus one line per row, '%.12g' numbers, empty fields for null.
void write_csv(std::ostream& os, const ResultTable& t);
nlohmann::json results_to_json(const RunManifest& m, const ResultTable& t);

}  // namespace noisegates
