// SPDX-License-Identifier: Apache-2.0
#include "noisegates/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace noisegates {

double EntangledPairCoeffs::A() const { return std::norm(a00) + std::norm(a10); }

Complex EntangledPairCoeffs::B() const { return std::conj(a00) * a01 + std::conj(a10) * a11; }

void EntangledPairCoeffs::validate() const {
  const double norm = std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("entangled pair is not normalized");
  }
}

EntangledPairCoeffs EntangledPairCoeffs::bell() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, 0.0, 0.0, s};
}

EntangledPairCoeffs EntangledPairCoeffs::lambda_family(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0, 1]");
  return {0.0, std::sqrt(lambda), std::sqrt(1.0 - lambda), 0.0};
}

EntangledPairCoeffs EntangledPairCoeffs::from_array(const std::array<Complex, 4>& a) {
  EntangledPairCoeffs p{a[0], a[1], a[2], a[3]};
  p.validate();
  return p;
}

std::array<Complex, 4> EntangledPairCoeffs::to_array() const { return {a00, a01, a10, a11}; }

double ChainCouplings::aggregate(std::size_t component) const {
  double sum = 0.0;
  for (const auto& iv : intervals) sum += iv.gammas.at(component) * iv.duration;
  return sum;
}

double ChainCouplings::aggregate_pair(std::size_t m, std::size_t n) const {
  return aggregate(m) + aggregate(n);
}

double ChainCouplings::total_time() const {
  double sum = 0.0;
  for (const auto& iv : intervals) sum += iv.duration;
  return sum;
}

void ChainCouplings::validate() const {
  for (const auto& iv : intervals) {
    if (!(iv.duration >= 0.0)) throw std::invalid_argument("chain interval must be non-negative");
    for (double g : iv.gammas) {
      if (!(g >= 0.0)) throw std::invalid_argument("chain couplings must be non-negative");
    }
  }
}

ChainCouplings ChainCouplings::uniform(std::size_t n_intervals, std::vector<double> gammas,
                                       double duration) {
  ChainCouplings c;
  c.intervals.assign(n_intervals, Interval{std::move(gammas), duration});
  return c;
}

double flip_persistence(double gamma, double dt) {
  return 0.5 * (1.0 + std::exp(-2.0 * gamma * dt));
}

namespace {

void require_non_negative(std::initializer_list<double> values, const char* what) {
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative input");
  }
}

}  // namespace

double fidelity_cnot_bitflip(double gamma1, double gamma2, double interval1, double interval2) {
  require_non_negative({gamma1, gamma2, interval1, interval2}, "fidelity_cnot_bitflip");
  const double p1a = flip_persistence(gamma1, interval1);
  const double p2a = flip_persistence(gamma2, interval1);
  const double p1b = flip_persistence(gamma1, interval2);
  const double p2b = flip_persistence(gamma2, interval2);
  const double q1a = 1.0 - p1a, q2a = 1.0 - p2a, q1b = 1.0 - p1b, q2b = 1.0 - p2b;
  return p1a * p2a * p1b * p2b + q1a * p2a * q1b * q2b + p1a * q2a * p1b * q2b +
         q1a * q2a * q1b * p2b;
}

double fidelity_cnot_bitflip_symmetric(double p) { return 4.0 * p * p * p - 5.0 * p * p + 2.0 * p; }

double fidelity_chain_amplitude_damping(const EntangledPairCoeffs& pair, double Gamma) {
  pair.validate();
  require_non_negative({Gamma}, "fidelity_chain_amplitude_damping");
  const double A = pair.A();
  const double head = A + (1.0 - A) * std::exp(-0.5 * Gamma);
  return head * head + std::norm(pair.B()) * (-std::expm1(-Gamma));
}

double flip_asymmetry(ChannelKind kind, const EntangledPairCoeffs& pair) {
  switch (kind) {
    case ChannelKind::BitFlip: return 2.0 * pair.B().real();
    case ChannelKind::PhaseFlip: return 2.0 * pair.A() - 1.0;
    case ChannelKind::BitPhaseFlip: return 2.0 * pair.B().imag();
    default: throw std::invalid_argument("flip_asymmetry: not a flip channel");
  }
}

double fidelity_chain_flip(ChannelKind kind, const EntangledPairCoeffs& pair, double Gamma) {
  pair.validate();
  require_non_negative({Gamma}, "fidelity_chain_flip");
  const double g2 = std::pow(flip_asymmetry(kind, pair), 2);
  return 0.5 * (1.0 + g2) + 0.5 * (1.0 - g2) * std::exp(-2.0 * Gamma);
}

double fidelity_chain_depolarizing(const EntangledPairCoeffs& pair, double Gamma12,
                                   double Gamma13, double Gamma23) {
  pair.validate();
  require_non_negative({Gamma12, Gamma13, Gamma23}, "fidelity_chain_depolarizing");
  const double A = pair.A();
  const Complex B = pair.B();
  const double e12 = std::exp(-2.0 * Gamma12);
  const double e13 = std::exp(-2.0 * Gamma13);
  const double e23 = std::exp(-2.0 * Gamma23);
  return 0.5 * (A * A + (1.0 - A) * (1.0 - A)) * (1.0 + e12) + A * (1.0 - A) * (e23 + e13) +
         std::norm(B) * (1.0 - e12) + (B * B).real() * (e23 - e13);
}

double fidelity_chain_gen_amp_damping(const EntangledPairCoeffs& pair, double gamma_decay,
                                      double gamma_excite, double total_time) {
  pair.validate();
  require_non_negative({gamma_decay, gamma_excite, total_time}, "fidelity_chain_gen_amp_damping");
  const double rate = gamma_decay + gamma_excite;
  if (rate == 0.0) return 1.0;
  const double A = pair.A();
  const double b2 = std::norm(pair.B());
  const double w_decay = gamma_decay / rate;
  const double w_excite = gamma_excite / rate;
  const double e = std::exp(-rate * total_time);
  return (A * A * w_decay + (1.0 - A) * (1.0 - A) * w_excite + b2) +
         (A * A * w_excite + (1.0 - A) * (1.0 - A) * w_decay - b2) * e +
         2.0 * A * (1.0 - A) * std::exp(-0.5 * rate * total_time);
}

double fidelity_chain(ChannelKind kind, const EntangledPairCoeffs& pair,
                      const ChainCouplings& couplings) {
  couplings.validate();
  switch (kind) {
    case ChannelKind::BitFlip:
    case ChannelKind::PhaseFlip:
    case ChannelKind::BitPhaseFlip:
      return fidelity_chain_flip(kind, pair, couplings.aggregate(0));
    case ChannelKind::AmplitudeDamping:
      return fidelity_chain_amplitude_damping(pair, couplings.aggregate(0));
    case ChannelKind::Depolarizing:
      return fidelity_chain_depolarizing(pair, couplings.aggregate_pair(0, 1),
                                         couplings.aggregate_pair(0, 2),
                                         couplings.aggregate_pair(1, 2));
    case ChannelKind::GeneralizedAmplitudeDamping: {
      if (couplings.intervals.empty()) return 1.0;
      const auto& g = couplings.intervals.front().gammas;
      for (const auto& iv : couplings.intervals) {
        if (iv.gammas != g) {
          throw std::invalid_argument(
              "generalized amplitude damping formula needs uniform couplings");
        }
      }
      return fidelity_chain_gen_amp_damping(pair, g.at(0), g.at(1), couplings.total_time());
    }
  }
  throw std::invalid_argument("fidelity_chain: unknown channel");
}

SecondMoments chain_moments(ChannelKind kind, const ChainCouplings& couplings) {
  SecondMoments acc = SecondMoments::identity();
  for (const auto& iv : couplings.intervals) {
    acc = compose(second_moments(ChannelSpec{kind, iv.gammas}, iv.duration), acc);
  }
  return acc;
}

double fidelity_from_moments(const EntangledPairCoeffs& pair, const SecondMoments& m) {
  pair.validate();
  const Complex B = pair.B();
  const std::array<Complex, 4> v{pair.A(), B, std::conj(B), 1.0 - pair.A()};
  Complex sum = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      sum += v[static_cast<std::size_t>(a)] * std::conj(v[static_cast<std::size_t>(b)]) *
             m(a >> 1, a & 1, b >> 1, b & 1);
    }
  return sum.real();
}

}  // namespace noisegates
