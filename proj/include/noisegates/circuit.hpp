// SPDX-License-Identifier: Apache-2.0
//
// Timed circuits: unitary gate events interleaved with per-qubit noise
// segments, plus builders for the noisy-CNOT and spin-chain transfer circuits.
#pragma once

#include "noisegates/channels.hpp"
#include "noisegates/qstate.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace noisegates {

enum class GateKind { X, Y, Z, H, CNOT, SWAP, Custom };

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view name);
/// 1 or 2; Custom has the arity implied by its matrix.
int gate_arity(GateKind kind);

struct GateEvent {
  double time = 0.0;
  GateKind kind = GateKind::X;
  std::vector<QubitIndex> operands;
  /// Required for Custom (2x2 or 4x4), ignored otherwise.
  std::optional<Eigen::MatrixXcd> matrix;

  int arity() const;
};

struct NoiseSegment {
  QubitIndex qubit = 0;
  ChannelSpec channel;
  double t_a = 0.0;
  double t_b = 0.0;
};

struct CircuitIR {
  int n_qubits = 1;
  std::vector<GateEvent> events;
  std::vector<NoiseSegment> segments;
  double t_start = 0.0;
  double t_end = 0.0;

  /// Throws std::invalid_argument describing the first violated invariant:
  /// unsorted events, times outside [t_start, t_end], bad operands, overlapping
  /// segments on a qubit, or a gate time strictly inside a segment on one of
  /// its operands.
  void validate() const;
};

/// One noise history: gate events and sampled noise segments applied in time
/// order. A segment acts at its end time, before any gate scheduled at that
/// time. Segment s (in t_a order) on qubit q draws from
/// StreamKey{seed, trajectory, q, component, s}.
StateVector run_trajectory(const CircuitIR& c, const StateVector& input,
                           std::uint64_t master_seed, std::uint64_t trajectory, double dt);

/// The part of `c` up to time t: gates at times <= t, segments clipped to end
/// by t. Segments starting at or after t are dropped.
CircuitIR truncate_circuit(const CircuitIR& c, double t);

/// Product N_last ... N_first of time-contiguous samples given earliest first.
NoiseGateSample compose_chain_gate(std::span<const NoiseGateSample> segments);

/// Two qubits (control 0, target 1), noise on both over (t1, t2) and
/// (t2, t3), CNOT at t2.
CircuitIR build_cnot_scenario(const ChannelSpec& control_noise, const ChannelSpec& target_noise,
                              double t1, double t2, double t3);
CircuitIR build_cnot_scenario(double gamma1, double gamma2, ChannelKind kind, double t1,
                              double t2, double t3);

/// Transfer of qubit 1 of an entangled pair (qubits 0, 1) to qubit n along a
/// chain of n + 1 qubits by SWAPs (k, k+1) at times t_1 < ... < t_{n-1}.
struct SpinChainScenario {
  int n = 2;
  ChannelKind kind = ChannelKind::AmplitudeDamping;
  /// couplings[q] holds the gammas for qubit q, q = 0..n.
  std::vector<std::vector<double>> couplings;
  /// times[0..n]: t_0 < t_1 < ... < t_n.
  std::vector<double> times;
  /// a00, a01, a10, a11 of the pair on qubits (0, 1).
  std::array<Complex, 4> pair{Complex(1.0 / std::sqrt(2.0)), 0.0, 0.0, Complex(1.0 / std::sqrt(2.0))};
  /// Bulk state of qubits 2..n; empty means |0...0>.
  StateVector bulk;
  bool qubit0_noise = true;

  /// Uniform couplings and equally spaced times t_k = k * interval.
  static SpinChainScenario uniform(int n, const ChannelSpec& channel, double interval);

  void validate() const;
  ChannelSpec channel_for(QubitIndex q) const;
};

CircuitIR build_spinchain_scenario(const SpinChainScenario& s);
/// Qubit holding the transmitted state at time t (after any swap at t).
QubitIndex spinchain_position(const SpinChainScenario& s, double t);
/// |pair> (x) |bulk> on n + 1 qubits.
StateVector spinchain_input_state(const SpinChainScenario& s);
/// The pair state on the two kept qubits (0, n).
StateVector spinchain_target_state(const SpinChainScenario& s);

// JSON document {n_qubits, events: [{t, kind, operands}], segments:
// [{qubit, channel: {kind, gammas}, t_a, t_b}]} with optional t_start, t_end,
// and "matrix" for custom events.
void to_json(nlohmann::json& j, const CircuitIR& c);
void from_json(const nlohmann::json& j, CircuitIR& c);
void to_json(nlohmann::json& j, const ChannelSpec& c);
void from_json(const nlohmann::json& j, ChannelSpec& c);

}  // namespace noisegates
