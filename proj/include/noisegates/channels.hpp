// SPDX-License-Identifier: Apache-2.0
//
// Single-qubit decoherence channels as noise gates: closed-form samplers,
// second-moment tables, and moment extraction from master-equation images.
#pragma once

#include "noisegates/open_system.hpp"
#include "noisegates/qstate.hpp"
#include "noisegates/stochastic.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace noisegates {

enum class ChannelKind {
  BitFlip,
  PhaseFlip,
  BitPhaseFlip,
  AmplitudeDamping,
  Depolarizing,
  GeneralizedAmplitudeDamping,
};

inline constexpr std::array<ChannelKind, 6> kAllChannelKinds{
    ChannelKind::BitFlip,          ChannelKind::PhaseFlip,    ChannelKind::BitPhaseFlip,
    ChannelKind::AmplitudeDamping, ChannelKind::Depolarizing, ChannelKind::GeneralizedAmplitudeDamping};

std::string_view to_string(ChannelKind kind);
/// Accepts the enumerator names ("BitFlip", ...) and kebab-case aliases ("bit-flip", ...).
ChannelKind parse_channel_kind(std::string_view name);

bool is_flip(ChannelKind kind);
bool has_closed_form_sampler(ChannelKind kind);
/// Number of coupling constants (= independent Wiener processes) of a kind.
std::size_t gamma_count(ChannelKind kind);
/// sigma_x, sigma_z, sigma_y for the three flip kinds.
Gate2 flip_pauli(ChannelKind kind);

/// Channel kind plus couplings. Depolarizing takes (g_x, g_y, g_z);
/// GeneralizedAmplitudeDamping takes (g_decay, g_excite).
struct ChannelSpec {
  ChannelKind kind = ChannelKind::BitFlip;
  std::vector<double> gammas{0.0};

  void validate() const;
  bool is_noiseless() const;

  static ChannelSpec single(ChannelKind kind, double gamma);
  static ChannelSpec depolarizing(double gx, double gy, double gz);
  static ChannelSpec generalized_amplitude_damping(double g_decay, double g_excite);
};

/// The Lindblad operators and rates behind a channel.
LindbladSpec lindblad_spec_for(const ChannelSpec& spec);

struct NoiseGateSample {
  Gate2 matrix = Gate2::Identity();
  double t_a = 0.0;
  double t_b = 0.0;
};

/// E[n_ij conj(n_kl)] for the entries n_ij of a noise gate over one interval.
class SecondMoments {
 public:
  SecondMoments() { values_.fill(Complex{0.0, 0.0}); }

  static SecondMoments identity();

  Complex& operator()(int i, int j, int k, int l) { return values_[index(i, j, k, l)]; }
  Complex operator()(int i, int j, int k, int l) const { return values_[index(i, j, k, l)]; }

  double interval = 0.0;

 private:
  static std::size_t index(int i, int j, int k, int l) {
    return static_cast<std::size_t>((i << 3) | (j << 2) | (k << 1) | l);
  }
  std::array<Complex, 16> values_;
};

/// max over (j, j') of |sum_i m(i,j,i,j') - delta_{jj'}|.
double trace_preservation_residual(const SecondMoments& m);
/// max |m(i,j,k,l) - conj(m(k,l,i,j))|.
double hermitian_pairing_residual(const SecondMoments& m);
/// max entrywise |a - b|.
double max_abs_difference(const SecondMoments& a, const SecondMoments& b);

/// Moments of (later * earlier) for independent gates.
SecondMoments compose(const SecondMoments& later, const SecondMoments& earlier);

/// The averaged channel map rho -> E[N rho N^dagger] implied by the moments.
Gate2 apply_channel(const SecondMoments& m, const Gate2& rho);

/// exp(i sqrt(g) sigma dW) with dW ~ Normal(0, t - t0), drawn from `key` at index 0.
NoiseGateSample sample_flip_gate(ChannelKind kind, double gamma, const StreamKey& key, double t0,
                                 double t);

/// [[1, i phi], [0, exp(-g (t - t0) / 2)]] with phi from the exact Ito-integral law.
NoiseGateSample sample_amplitude_damping_gate(double gamma, const StreamKey& key, double t0,
                                              double t);

/// Samples any channel over [t0, t]: closed form for the elementary kinds,
/// Euler-Maruyama with step <= dt otherwise. Component k of the channel draws
/// from `key` with `component = k`.
NoiseGateSample sample_noise_gate(const ChannelSpec& spec, StreamKey key, double t0, double t,
                                  double dt);

/// Analytic moment table of a channel over an interval of length T.
SecondMoments second_moments(const ChannelSpec& spec, double T);

/// Generalized amplitude damping table with the off-diagonal moments in the
/// form printed in the source derivation, (g/G) exp(-G T). These values are
/// not trace preserving; kept for regression checks only.
SecondMoments printed_generalized_amplitude_damping_moments(double g_decay, double g_excite,
                                                            double T);

/// Identifies the moments m(j,i,l,k) = <j| Phi(|i><k|) |l> from the images of
/// the four matrix units, ordered |0><0|, |0><1|, |1><0|, |1><1|. Throws if
/// the images are not those of a Hermiticity-preserving map (residual > 1e-8).
SecondMoments moments_from_master_solution(const std::array<Gate2, 4>& images);

}  // namespace noisegates
