// SPDX-License-Identifier: Apache-2.0
//
// Density-matrix reference solutions of the master equation
//
//   d rho/dt = -i[H, rho] + sum_k g_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho}).
#pragma once

#include "noisegates/channels.hpp"
#include "noisegates/open_system.hpp"
#include "noisegates/qstate.hpp"

namespace noisegates {

/// Right-hand side of the master equation at `rho`.
DensityMatrix lindblad_rhs(const LindbladSpec& spec, const DensityMatrix& rho);

/// min(0.01 / max gamma, T / 100); T / 100 alone when the spec is noiseless.
double default_rk4_dt(const LindbladSpec& spec, double T);

/// Fixed-step classical RK4. The last step is shortened to land on T.
DensityMatrix rk4_evolve(const LindbladSpec& spec, const DensityMatrix& rho0, double T, double dt);

/// Explicit solutions for Depolarizing and GeneralizedAmplitudeDamping
/// (AmplitudeDamping is accepted as its zero-excitation limit), extended to
/// arbitrary 2x2 inputs by linearity.
DensityMatrix closed_form_rho(const ChannelSpec& spec, const DensityMatrix& rho0, double T);

/// Images of |0><0|, |0><1|, |1><0|, |1><1| under RK4 evolution of `spec` for time T.
std::array<Gate2, 4> propagate_matrix_units(const LindbladSpec& spec, double T, double dt);

/// Adds the channel's Lindblad terms acting on `qubit` of an n-qubit register to `spec`.
void add_channel_terms(LindbladSpec& spec, const ChannelSpec& channel, QubitIndex qubit,
                       int n_qubits);

/// Zero Hamiltonian on n qubits with no dissipators.
LindbladSpec empty_lindblad_spec(int n_qubits);

}  // namespace noisegates
