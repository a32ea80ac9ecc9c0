// SPDX-License-Identifier: Apache-2.0
//
// Closed-form protocol fidelities for the noisy CNOT and for the transfer of
// one half of an entangled pair along a noisy spin chain. Noise on the
// stationary qubit 0 is not included in the chain formulas.
#pragma once

#include "noisegates/channels.hpp"
#include "noisegates/qstate.hpp"

#include <array>
#include <vector>

namespace noisegates {

/// a00|00> + a01|01> + a10|10> + a11|11>; the second qubit is the one transmitted.
struct EntangledPairCoeffs {
  Complex a00{1.0}, a01{0.0}, a10{0.0}, a11{0.0};

  /// |a00|^2 + |a10|^2: weight of the transmitted qubit in |0>.
  double A() const;
  /// conj(a00) a01 + conj(a10) a11.
  Complex B() const;

  void validate() const;

  static EntangledPairCoeffs bell();
  /// sqrt(lambda)|01> + sqrt(1 - lambda)|10>.
  static EntangledPairCoeffs lambda_family(double lambda);
  static EntangledPairCoeffs from_array(const std::array<Complex, 4>& a);
  std::array<Complex, 4> to_array() const;
};

/// Per-swap-interval couplings of the travelling qubit.
struct ChainCouplings {
  struct Interval {
    std::vector<double> gammas;
    double duration = 0.0;
  };
  std::vector<Interval> intervals;

  /// sum over intervals of gammas[component] * duration.
  double aggregate(std::size_t component) const;
  /// aggregate(m) + aggregate(n); zero-based components.
  double aggregate_pair(std::size_t m, std::size_t n) const;
  double total_time() const;
  void validate() const;

  static ChainCouplings uniform(std::size_t n_intervals, std::vector<double> gammas,
                                double duration);
};

/// p(dt) = (1 + exp(-2 g dt)) / 2.
double flip_persistence(double gamma, double dt);

/// Noisy CNOT with bit-flip noise on both qubits over two intervals, input |00>.
double fidelity_cnot_bitflip(double gamma1, double gamma2, double interval1, double interval2);
/// 4p^3 - 5p^2 + 2p.
double fidelity_cnot_bitflip_symmetric(double p);

/// [A + (1 - A) exp(-G/2)]^2 + |B|^2 (1 - exp(-G)).
double fidelity_chain_amplitude_damping(const EntangledPairCoeffs& pair, double Gamma);

/// g_kappa for the flip kinds: 2 Re B, 2A - 1, 2 Im B.
double flip_asymmetry(ChannelKind kind, const EntangledPairCoeffs& pair);
/// (1 + g^2)/2 + (1 - g^2)/2 exp(-2G).
double fidelity_chain_flip(ChannelKind kind, const EntangledPairCoeffs& pair, double Gamma);

/// Depolarizing chain; arguments are the aggregates G^(1,2), G^(1,3), G^(2,3).
double fidelity_chain_depolarizing(const EntangledPairCoeffs& pair, double Gamma12,
                                   double Gamma13, double Gamma23);

/// Generalized amplitude damping chain with uniform couplings.
double fidelity_chain_gen_amp_damping(const EntangledPairCoeffs& pair, double gamma_decay,
                                      double gamma_excite, double total_time);

/// Dispatches to the formula for `kind`. Throws for GeneralizedAmplitudeDamping
/// with non-uniform couplings.
double fidelity_chain(ChannelKind kind, const EntangledPairCoeffs& pair,
                      const ChainCouplings& couplings);

/// Moments of the composed chain gate (independent intervals).
SecondMoments chain_moments(ChannelKind kind, const ChainCouplings& couplings);

/// E|A n00 + B n01 + conj(B) n10 + (1 - A) n11|^2 contracted through `m`.
double fidelity_from_moments(const EntangledPairCoeffs& pair, const SecondMoments& m);

}  // namespace noisegates
