// SPDX-License-Identifier: Apache-2.0
#include "noisegates/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noisegates {

DensityMatrix lindblad_rhs(const LindbladSpec& spec, const DensityMatrix& rho) {
  const Complex i(0.0, 1.0);
  DensityMatrix out = -i * (spec.hamiltonian * rho - rho * spec.hamiltonian);
  for (const auto& term : spec.lindblads) {
    if (term.gamma == 0.0) continue;
    const Eigen::MatrixXcd ldl = term.op.adjoint() * term.op;
    out.noalias() += term.gamma * (term.op * rho * term.op.adjoint());
    out.noalias() -= 0.5 * term.gamma * (ldl * rho + rho * ldl);
  }
  return out;
}

double default_rk4_dt(const LindbladSpec& spec, double T) {
  const double g = spec.max_gamma();
  const double by_time = T > 0.0 ? T / 100.0 : 0.01;
  return g > 0.0 ? std::min(0.01 / g, by_time) : by_time;
}

DensityMatrix rk4_evolve(const LindbladSpec& spec, const DensityMatrix& rho0, double T, double dt) {
  spec.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_evolve: dt must be positive");
  if (!(T >= 0.0)) throw std::invalid_argument("rk4_evolve: T must be non-negative");
  if (rho0.rows() != spec.dim() || rho0.cols() != spec.dim()) {
    throw std::invalid_argument("rk4_evolve: rho0 dimension does not match the spec");
  }
  DensityMatrix rho = rho0;
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
  for (std::size_t s = 0; s < steps; ++s) {
    const double h = std::min(dt, T - static_cast<double>(s) * dt);
    if (h <= 0.0) break;
    const DensityMatrix k1 = lindblad_rhs(spec, rho);
    const DensityMatrix k2 = lindblad_rhs(spec, rho + 0.5 * h * k1);
    const DensityMatrix k3 = lindblad_rhs(spec, rho + 0.5 * h * k2);
    const DensityMatrix k4 = lindblad_rhs(spec, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

DensityMatrix closed_form_rho(const ChannelSpec& spec, const DensityMatrix& rho0, double T) {
  spec.validate();
  if (rho0.rows() != 2 || rho0.cols() != 2) {
    throw std::invalid_argument("closed_form_rho: expects a single-qubit density matrix");
  }
  if (!(T >= 0.0)) throw std::invalid_argument("closed_form_rho: T must be non-negative");
  const Complex r00 = rho0(0, 0), r01 = rho0(0, 1), r10 = rho0(1, 0), r11 = rho0(1, 1);
  DensityMatrix out(2, 2);

  if (spec.kind == ChannelKind::Depolarizing) {
    const double g1 = spec.gammas[0], g2 = spec.gammas[1], g3 = spec.gammas[2];
    const double e12 = std::exp(-2.0 * T * (g1 + g2));
    const double e13 = std::exp(-2.0 * T * (g1 + g3));
    const double e23 = std::exp(-2.0 * T * (g2 + g3));
    out(0, 0) = 0.5 * (r00 * (1.0 + e12) + r11 * (1.0 - e12));
    out(1, 1) = 0.5 * (r00 * (1.0 - e12) + r11 * (1.0 + e12));
    out(0, 1) = 0.5 * (r01 * (e13 + e23) + r10 * (e23 - e13));
    out(1, 0) = 0.5 * (r10 * (e13 + e23) + r01 * (e23 - e13));
    return out;
  }

  double g_decay = 0.0, g_excite = 0.0;
  if (spec.kind == ChannelKind::GeneralizedAmplitudeDamping) {
    g_decay = spec.gammas[0];
    g_excite = spec.gammas[1];
  } else if (spec.kind == ChannelKind::AmplitudeDamping) {
    g_decay = spec.gammas[0];
  } else {
    throw std::invalid_argument("closed_form_rho: no closed form for " +
                                std::string(to_string(spec.kind)));
  }
  const double rate = g_decay + g_excite;
  if (rate == 0.0) return rho0;
  const double e = std::exp(-rate * T);
  const double decayed = -std::expm1(-rate * T);
  out(0, 0) = r00 * (g_decay + g_excite * e) / rate + r11 * g_decay * decayed / rate;
  out(1, 1) = r00 * g_excite * decayed / rate + r11 * (g_excite + g_decay * e) / rate;
  out(0, 1) = r01 * std::exp(-0.5 * rate * T);
  out(1, 0) = r10 * std::exp(-0.5 * rate * T);
  return out;
}

std::array<Gate2, 4> propagate_matrix_units(const LindbladSpec& spec, double T, double dt) {
  if (spec.dim() != 2) throw std::invalid_argument("propagate_matrix_units: single qubit only");
  std::array<Gate2, 4> images;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      DensityMatrix unit = DensityMatrix::Zero(2, 2);
      unit(i, k) = 1.0;
      images[static_cast<std::size_t>(2 * i + k)] = rk4_evolve(spec, unit, T, dt);
    }
  return images;
}

void add_channel_terms(LindbladSpec& spec, const ChannelSpec& channel, QubitIndex qubit,
                       int n_qubits) {
  for (const auto& term : lindblad_spec_for(channel).lindblads) {
    spec.lindblads.push_back({embed_one_qubit_operator(term.op, qubit, n_qubits), term.gamma});
  }
}

LindbladSpec empty_lindblad_spec(int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return LindbladSpec{Eigen::MatrixXcd::Zero(dim, dim), {}};
}

}  // namespace noisegates
