// SPDX-License-Identifier: Apache-2.0
#include "noisegates/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace noisegates {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::BitFlip: return "BitFlip";
    case ChannelKind::PhaseFlip: return "PhaseFlip";
    case ChannelKind::BitPhaseFlip: return "BitPhaseFlip";
    case ChannelKind::AmplitudeDamping: return "AmplitudeDamping";
    case ChannelKind::Depolarizing: return "Depolarizing";
    case ChannelKind::GeneralizedAmplitudeDamping: return "GeneralizedAmplitudeDamping";
  }
  throw std::invalid_argument("unknown channel kind");
}

ChannelKind parse_channel_kind(std::string_view name) {
  std::string folded;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    folded.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (auto kind : kAllChannelKinds) {
    std::string candidate;
    for (char c : to_string(kind)) {
      candidate.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (folded == candidate) return kind;
  }
  if (folded == "depol") return ChannelKind::Depolarizing;
  if (folded == "gad") return ChannelKind::GeneralizedAmplitudeDamping;
  if (folded == "ad") return ChannelKind::AmplitudeDamping;
  throw std::invalid_argument("unknown channel kind '" + std::string(name) + "'");
}

bool is_flip(ChannelKind kind) {
  return kind == ChannelKind::BitFlip || kind == ChannelKind::PhaseFlip ||
         kind == ChannelKind::BitPhaseFlip;
}

bool has_closed_form_sampler(ChannelKind kind) {
  return is_flip(kind) || kind == ChannelKind::AmplitudeDamping;
}

std::size_t gamma_count(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Depolarizing: return 3;
    case ChannelKind::GeneralizedAmplitudeDamping: return 2;
    default: return 1;
  }
}

Gate2 flip_pauli(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::BitFlip: return gates::pauli_x();
    case ChannelKind::PhaseFlip: return gates::pauli_z();
    case ChannelKind::BitPhaseFlip: return gates::pauli_y();
    default: throw std::invalid_argument("not a flip channel: " + std::string(to_string(kind)));
  }
}

void ChannelSpec::validate() const {
  if (gammas.size() != gamma_count(kind)) {
    throw std::invalid_argument(std::string(to_string(kind)) + " expects " +
                                std::to_string(gamma_count(kind)) + " coupling(s), got " +
                                std::to_string(gammas.size()));
  }
  for (double g : gammas) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("channel couplings must be finite and non-negative");
    }
  }
}

bool ChannelSpec::is_noiseless() const {
  return std::all_of(gammas.begin(), gammas.end(), [](double g) { return g == 0.0; });
}

ChannelSpec ChannelSpec::single(ChannelKind kind, double gamma) {
  ChannelSpec s{kind, {gamma}};
  s.validate();
  return s;
}

ChannelSpec ChannelSpec::depolarizing(double gx, double gy, double gz) {
  ChannelSpec s{ChannelKind::Depolarizing, {gx, gy, gz}};
  s.validate();
  return s;
}

ChannelSpec ChannelSpec::generalized_amplitude_damping(double g_decay, double g_excite) {
  ChannelSpec s{ChannelKind::GeneralizedAmplitudeDamping, {g_decay, g_excite}};
  s.validate();
  return s;
}

LindbladSpec lindblad_spec_for(const ChannelSpec& spec) {
  spec.validate();
  LindbladSpec out;
  out.hamiltonian = Eigen::MatrixXcd::Zero(2, 2);
  switch (spec.kind) {
    case ChannelKind::BitFlip:
    case ChannelKind::PhaseFlip:
    case ChannelKind::BitPhaseFlip:
      out.lindblads.push_back({flip_pauli(spec.kind), spec.gammas[0]});
      break;
    case ChannelKind::AmplitudeDamping:
      out.lindblads.push_back({gates::sigma_minus(), spec.gammas[0]});
      break;
    case ChannelKind::Depolarizing:
      out.lindblads.push_back({gates::pauli_x(), spec.gammas[0]});
      out.lindblads.push_back({gates::pauli_y(), spec.gammas[1]});
      out.lindblads.push_back({gates::pauli_z(), spec.gammas[2]});
      break;
    case ChannelKind::GeneralizedAmplitudeDamping:
      out.lindblads.push_back({gates::sigma_minus(), spec.gammas[0]});
      out.lindblads.push_back({gates::sigma_plus(), spec.gammas[1]});
      break;
  }
  return out;
}

SecondMoments SecondMoments::identity() {
  SecondMoments m;
  m(0, 0, 0, 0) = 1.0;
  m(0, 0, 1, 1) = 1.0;
  m(1, 1, 0, 0) = 1.0;
  m(1, 1, 1, 1) = 1.0;
  return m;
}

double trace_preservation_residual(const SecondMoments& m) {
  double worst = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int jp = 0; jp < 2; ++jp) {
      const Complex sum = m(0, j, 0, jp) + m(1, j, 1, jp);
      worst = std::max(worst, std::abs(sum - Complex(j == jp ? 1.0 : 0.0, 0.0)));
    }
  }
  return worst;
}

double hermitian_pairing_residual(const SecondMoments& m) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          worst = std::max(worst, std::abs(m(i, j, k, l) - std::conj(m(k, l, i, j))));
  return worst;
}

double max_abs_difference(const SecondMoments& a, const SecondMoments& b) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          worst = std::max(worst, std::abs(a(i, j, k, l) - b(i, j, k, l)));
  return worst;
}

SecondMoments compose(const SecondMoments& later, const SecondMoments& earlier) {
  SecondMoments out;
  out.interval = later.interval + earlier.interval;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          Complex sum = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) sum += later(i, a, k, b) * earlier(a, j, b, l);
          out(i, j, k, l) = sum;
        }
  return out;
}

Gate2 apply_channel(const SecondMoments& m, const Gate2& rho) {
  Gate2 out = Gate2::Zero();
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) out(j, l) += m(j, i, l, k) * rho(i, k);
  return out;
}

NoiseGateSample sample_flip_gate(ChannelKind kind, double gamma, const StreamKey& key, double t0,
                                 double t) {
  const Gate2 sigma = flip_pauli(kind);
  if (!(gamma >= 0.0)) throw std::invalid_argument("flip gate: negative gamma");
  if (!(t >= t0)) throw std::invalid_argument("flip gate: t < t0");
  const double theta = std::sqrt(gamma) * sample_wiener_increment(key, 0, t - t0);
  NoiseGateSample s;
  s.matrix = std::cos(theta) * Gate2::Identity() + Complex(0.0, std::sin(theta)) * sigma;
  s.t_a = t0;
  s.t_b = t;
  return s;
}

NoiseGateSample sample_amplitude_damping_gate(double gamma, const StreamKey& key, double t0,
                                              double t) {
  const double phi = sample_ito_exponential_integral(key, gamma, t0, t);
  NoiseGateSample s;
  s.matrix << 1.0, Complex(0.0, phi), 0.0, std::exp(-0.5 * gamma * (t - t0));
  s.t_a = t0;
  s.t_b = t;
  return s;
}

NoiseGateSample sample_noise_gate(const ChannelSpec& spec, StreamKey key, double t0, double t,
                                  double dt) {
  spec.validate();
  if (!(t >= t0)) throw std::invalid_argument("noise segment: t < t0");
  key.component = 0;
  if (is_flip(spec.kind)) return sample_flip_gate(spec.kind, spec.gammas[0], key, t0, t);
  if (spec.kind == ChannelKind::AmplitudeDamping) {
    return sample_amplitude_damping_gate(spec.gammas[0], key, t0, t);
  }

  const LindbladSpec lind = lindblad_spec_for(spec);
  const EulerMaruyamaOperators ops(lind);
  const Gate2 drift = ops.drift;
  std::vector<Gate2> noise;
  std::vector<StreamKey> keys;
  for (std::size_t k = 0; k < ops.noise.size(); ++k) {
    noise.emplace_back(ops.noise[k]);
    StreamKey kk = key;
    kk.component = static_cast<std::uint32_t>(k);
    keys.push_back(kk);
  }
  NoiseGateSample s;
  s.t_a = t0;
  s.t_b = t;
  if (t == t0) return s;
  const TimeGrid grid = TimeGrid::covering(t0, t, dt);
  euler_maruyama_apply<Gate2>(drift, noise, grid, keys, s.matrix);
  return s;
}

namespace {

SecondMoments flip_moments(ChannelKind kind, double gamma, double T) {
  // N = c I + i s sigma with E[c^2] = p, E[s^2] = 1 - p, E[c s] = 0.
  const Gate2 sigma = flip_pauli(kind);
  const double p = 0.5 * (1.0 + std::exp(-2.0 * gamma * T));
  const double pbar = -0.5 * std::expm1(-2.0 * gamma * T);
  SecondMoments m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const double diag = (i == j && k == l) ? p : 0.0;
          m(i, j, k, l) = diag + pbar * sigma(i, j) * std::conj(sigma(k, l));
        }
  return m;
}

SecondMoments gad_moments(double g_decay, double g_excite, double T) {
  const double rate = g_decay + g_excite;
  if (rate == 0.0 || T == 0.0) return SecondMoments::identity();
  const double decayed = -std::expm1(-rate * T);  // 1 - exp(-G T)
  SecondMoments m;
  m(0, 1, 0, 1) = g_decay * decayed / rate;
  m(1, 0, 1, 0) = g_excite * decayed / rate;
  m(0, 0, 0, 0) = 1.0 - g_excite * decayed / rate;
  m(1, 1, 1, 1) = 1.0 - g_decay * decayed / rate;
  const double coherence = std::exp(-0.5 * rate * T);
  m(0, 0, 1, 1) = coherence;
  m(1, 1, 0, 0) = coherence;
  return m;
}

SecondMoments depolarizing_moments(double gx, double gy, double gz, double T) {
  const double e12 = std::exp(-2.0 * T * (gx + gy));
  const double e13 = std::exp(-2.0 * T * (gx + gz));
  const double e23 = std::exp(-2.0 * T * (gy + gz));
  SecondMoments m;
  m(0, 0, 0, 0) = 0.5 * (1.0 + e12);
  m(1, 1, 1, 1) = 0.5 * (1.0 + e12);
  m(0, 1, 0, 1) = 0.5 * (1.0 - e12);
  m(1, 0, 1, 0) = 0.5 * (1.0 - e12);
  m(0, 0, 1, 1) = 0.5 * (e23 + e13);
  m(1, 1, 0, 0) = 0.5 * (e23 + e13);
  m(0, 1, 1, 0) = 0.5 * (e23 - e13);
  m(1, 0, 0, 1) = 0.5 * (e23 - e13);
  return m;
}

}  // namespace

SecondMoments second_moments(const ChannelSpec& spec, double T) {
  spec.validate();
  if (!(T >= 0.0)) throw std::invalid_argument("second_moments: negative interval");
  SecondMoments m;
  switch (spec.kind) {
    case ChannelKind::BitFlip:
    case ChannelKind::PhaseFlip:
    case ChannelKind::BitPhaseFlip:
      m = flip_moments(spec.kind, spec.gammas[0], T);
      break;
    case ChannelKind::AmplitudeDamping:
      m = gad_moments(spec.gammas[0], 0.0, T);
      break;
    case ChannelKind::Depolarizing:
      m = depolarizing_moments(spec.gammas[0], spec.gammas[1], spec.gammas[2], T);
      break;
    case ChannelKind::GeneralizedAmplitudeDamping:
      m = gad_moments(spec.gammas[0], spec.gammas[1], T);
      break;
  }
  m.interval = T;
  return m;
}

SecondMoments printed_generalized_amplitude_damping_moments(double g_decay, double g_excite,
                                                            double T) {
  SecondMoments m = gad_moments(g_decay, g_excite, T);
  const double rate = g_decay + g_excite;
  if (rate > 0.0) {
    m(0, 1, 0, 1) = g_decay / rate * std::exp(-rate * T);
    m(1, 0, 1, 0) = g_excite / rate * std::exp(-rate * T);
  }
  m.interval = T;
  return m;
}

SecondMoments moments_from_master_solution(const std::array<Gate2, 4>& images) {
  const double residual =
      std::max({hermiticity_residual(images[0]), hermiticity_residual(images[3]),
                (images[2] - images[1].adjoint()).cwiseAbs().maxCoeff()});
  if (!(residual <= 1e-8)) {
    throw std::invalid_argument("master-equation images are not Hermiticity preserving (residual " +
                                std::to_string(residual) + ")");
  }
  SecondMoments m;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const Gate2& image = images[static_cast<std::size_t>(2 * i + k)];
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) m(j, i, l, k) = image(j, l);
    }
  return m;
}

}  // namespace noisegates
