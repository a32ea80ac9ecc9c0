// SPDX-License-Identifier: Apache-2.0
#include "noisegates/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace noisegates {

namespace {

constexpr std::array<std::string_view, 3> kScenarioNames{"cnot", "spinchain", "custom"};
constexpr std::array<std::string_view, 2> kProfileNames{"uniform", "gaussian"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) { return kScenarioNames[static_cast<std::size_t>(kind)]; }

ScenarioKind parse_scenario_kind(std::string_view name) {
  const auto key = lower(name);
  if (key == "spin-chain") return ScenarioKind::SpinChain;
  for (std::size_t i = 0; i < kScenarioNames.size(); ++i) {
    if (key == kScenarioNames[i]) return static_cast<ScenarioKind>(i);
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

std::string_view to_string(CouplingProfile profile) {
  return kProfileNames[static_cast<std::size_t>(profile)];
}

CouplingProfile parse_coupling_profile(std::string_view name) {
  const auto key = lower(name);
  for (std::size_t i = 0; i < kProfileNames.size(); ++i) {
    if (key == kProfileNames[i]) return static_cast<CouplingProfile>(i);
  }
  throw std::invalid_argument("unknown coupling profile '" + std::string(name) + "'");
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(steps);
  if (steps == 1) {
    out[0] = min;
    return out;
  }
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  out.back() = max;
  return out;
}

void SweepAxis::validate() const {
  if (steps < 1) throw std::invalid_argument(name + " axis: steps must be at least 1");
  if (!(std::isfinite(min) && std::isfinite(max) && min <= max)) {
    throw std::invalid_argument(name + " axis: need finite bounds with min <= max");
  }
}

int RunManifest::register_qubits() const {
  switch (scenario) {
    case ScenarioKind::Cnot: return 2;
    case ScenarioKind::SpinChain: return n + 1;
    case ScenarioKind::Custom: return circuit ? circuit->n_qubits : 0;
  }
  return 0;
}

bool RunManifest::monte_carlo_enabled() const {
  return monte_carlo.value_or(register_qubits() <= kMaxMonteCarloQubits);
}

void RunManifest::validate() const {
  channel.validate();
  ensemble.validate();
  time.validate();
  if (monte_carlo.value_or(false) && register_qubits() > kMaxMonteCarloQubits) {
    throw std::invalid_argument("Monte Carlo columns need at most " +
                                std::to_string(kMaxMonteCarloQubits) + " qubits; got " +
                                std::to_string(register_qubits()));
  }
  switch (scenario) {
    case ScenarioKind::Cnot:
      if (!(time.min >= 0.0)) throw std::invalid_argument("cnot: interval length must be >= 0");
      break;
    case ScenarioKind::SpinChain: {
      lambda.validate();
      if (lambda.min < 0.0 || lambda.max > 1.0) {
        throw std::invalid_argument("lambda axis must lie in [0, 1]");
      }
      if (n < 2) throw std::invalid_argument("spin chain: n must be at least 2");
      if (!(interval > 0.0)) throw std::invalid_argument("spin chain: interval must be positive");
      if (time.min < 0.0 || time.max > n * interval * (1.0 + 1e-12)) {
        throw std::invalid_argument("spin chain: time axis must lie in [0, n * interval]");
      }
      if (profile == CouplingProfile::Gaussian) {
        if (!covariances.empty() && covariances.size() != gamma_count(channel.kind)) {
          throw std::invalid_argument("gaussian profile: need one covariance per coupling");
        }
        for (double c : covariances) {
          if (!(c > 0.0)) throw std::invalid_argument("gaussian profile: covariance must be > 0");
        }
      }
      break;
    }
    case ScenarioKind::Custom:
      if (!circuit) throw std::invalid_argument("custom scenario needs a circuit file");
      circuit->validate();
      if (!monte_carlo_enabled()) {
        throw std::invalid_argument("custom scenario has no analytic column; Monte Carlo is required");
      }
      break;
  }
}

std::vector<double> default_gammas(ChannelKind kind, CouplingProfile profile) {
  switch (kind) {
    case ChannelKind::Depolarizing: return {0.02, 0.02, 0.02};
    case ChannelKind::GeneralizedAmplitudeDamping: return {0.075, 0.025};
    default: return {profile == CouplingProfile::Gaussian ? 0.02 : 0.1};
  }
}

std::vector<std::vector<double>> chain_coupling_table(const RunManifest& m) {
  const auto count = static_cast<std::size_t>(m.n + 1);
  if (m.profile == CouplingProfile::Uniform) return std::vector(count, m.channel.gammas);
  const std::size_t k = m.channel.gammas.size();
  std::vector<double> cov = m.covariances;
  if (cov.empty()) {
    const double base = std::pow(m.n / 10.0, 2);
    for (std::size_t i = 0; i < k; ++i) cov.push_back(static_cast<double>(i + 1) * base);
  }
  const double center = m.center.value_or(m.n / 2.0);
  std::vector<std::vector<double>> table(count, std::vector<double>(k));
  for (std::size_t q = 0; q < count; ++q) {
    const double x = static_cast<double>(q) - center;
    for (std::size_t i = 0; i < k; ++i) {
      table[q][i] = m.channel.gammas[i] * std::exp(-x * x / (2.0 * cov[i]));
    }
  }
  return table;
}

SpinChainScenario spinchain_for(const RunManifest& m, double lambda) {
  SpinChainScenario s = SpinChainScenario::uniform(m.n, m.channel, m.interval);
  s.couplings = chain_coupling_table(m);
  s.pair = EntangledPairCoeffs::lambda_family(lambda).to_array();
  s.qubit0_noise = m.qubit0_noise;
  return s;
}

ChainCouplings chain_couplings_until(const SpinChainScenario& s, double elapsed) {
  const double t0 = s.times.front();
  const double t_end = t0 + elapsed;
  ChainCouplings c;
  for (int a = 1; a <= s.n; ++a) {
    const double lo = s.times[static_cast<std::size_t>(a - 1)];
    const double hi = std::min(s.times[static_cast<std::size_t>(a)], t_end);
    c.intervals.push_back({s.couplings[static_cast<std::size_t>(a)], std::max(0.0, hi - lo)});
  }
  return c;
}

namespace {

using Row = std::vector<std::optional<double>>;
using Clock = std::chrono::steady_clock;

std::vector<std::string> columns_for(const RunManifest& m) {
  std::vector<std::string> cols;
  if (m.scenario == ScenarioKind::SpinChain) cols.push_back("lambda");
  cols.insert(cols.end(), {"time", "analytic_fidelity", "mc_fidelity", "mc_std_error"});
  if (m.timing) cols.push_back("wall_time_s");
  return cols;
}

void finish_row(Row& row, const RunManifest& m, std::optional<double> analytic,
                const std::optional<Estimate>& mc, Clock::time_point start) {
  row.push_back(analytic);
  row.push_back(mc ? std::optional(mc->value) : std::nullopt);
  row.push_back(mc ? std::optional(mc->std_error) : std::nullopt);
  if (m.timing) row.push_back(std::chrono::duration<double>(Clock::now() - start).count());
}

void run_cnot(const RunManifest& m, ResultTable& out) {
  const bool mc = m.monte_carlo_enabled();
  const StateVector input = basis_state(2, 0);
  StateVector target = input;
  apply_two_qubit_gate(target, gates::cnot(), 0, 1);
  const std::vector<QubitIndex> keep{0, 1};
  for (double T : m.time.values()) {
    const auto start = Clock::now();
    std::optional<double> analytic;
    if (m.channel.kind == ChannelKind::BitFlip) {
      const double g = m.channel.gammas.at(0);
      analytic = fidelity_cnot_bitflip(g, g, T, T);
    }
    std::optional<Estimate> est;
    if (mc) {
      const CircuitIR c = build_cnot_scenario(m.channel, m.channel, 0.0, T, 2.0 * T);
      est = estimate_fidelity(c, input, target, keep, m.ensemble);
    }
    Row row{T};
    finish_row(row, m, analytic, est, start);
    out.rows.push_back(std::move(row));
  }
}

void run_spinchain(const RunManifest& m, ResultTable& out) {
  const bool mc = m.monte_carlo_enabled();
  const bool analytic_ok =
      m.channel.kind != ChannelKind::GeneralizedAmplitudeDamping || m.profile == CouplingProfile::Uniform;
  for (double lambda : m.lambda.values()) {
    const SpinChainScenario s = spinchain_for(m, lambda);
    const EntangledPairCoeffs pair = EntangledPairCoeffs::from_array(s.pair);
    std::optional<CircuitIR> full;
    StateVector input, target;
    if (mc) {
      full = build_spinchain_scenario(s);
      input = spinchain_input_state(s);
      target = spinchain_target_state(s);
    }
    for (double t : m.time.values()) {
      const auto start = Clock::now();
      std::optional<double> analytic;
      if (analytic_ok) analytic = fidelity_chain(s.kind, pair, chain_couplings_until(s, t));
      std::optional<Estimate> est;
      if (mc) {
        const double at = std::min(s.times.front() + t, full->t_end);
        const CircuitIR c = truncate_circuit(*full, at);
        const std::vector<QubitIndex> keep{0, spinchain_position(s, at)};
        est = estimate_fidelity(c, input, target, keep, m.ensemble);
      }
      Row row{lambda, t};
      finish_row(row, m, analytic, est, start);
      out.rows.push_back(std::move(row));
    }
  }
}

void run_custom(const RunManifest& m, ResultTable& out) {
  const auto start = Clock::now();
  const CircuitIR& c = *m.circuit;
  const StateVector input = basis_state(c.n_qubits, 0);
  CircuitIR ideal = c;
  ideal.segments.clear();
  StateVector target = run_trajectory(ideal, input, 0, 0, m.ensemble.dt);
  target.normalize();
  std::vector<QubitIndex> keep(static_cast<std::size_t>(c.n_qubits));
  for (int q = 0; q < c.n_qubits; ++q) keep[static_cast<std::size_t>(q)] = q;
  const Estimate est = estimate_fidelity(c, input, target, keep, m.ensemble);
  Row row{c.t_end};
  finish_row(row, m, std::nullopt, est, start);
  out.rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ResultTable run_scenario(const RunManifest& m) {
  m.validate();
  ResultTable out;
  out.columns = columns_for(m);
  switch (m.scenario) {
    case ScenarioKind::Cnot: run_cnot(m, out); break;
    case ScenarioKind::SpinChain: run_spinchain(m, out); break;
    case ScenarioKind::Custom: run_custom(m, out); break;
  }
  return out;
}

void write_csv(std::ostream& os, const ResultTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << format_number(*row[i]);
    }
    os << '\n';
  }
}

nlohmann::json results_to_json(const RunManifest& m, const ResultTable& t) {
  nlohmann::json manifest{
      {"scenario", std::string(to_string(m.scenario))},
      {"channel", m.channel},
      {"trajectories", m.ensemble.n_trajectories},
      {"seed", m.ensemble.master_seed},
      {"dt", m.ensemble.dt},
      {"monte_carlo", m.monte_carlo_enabled()},
  };
  if (m.scenario == ScenarioKind::SpinChain) {
    manifest["n"] = m.n;
    manifest["interval"] = m.interval;
    manifest["profile"] = std::string(to_string(m.profile));
    manifest["couplings"] = chain_coupling_table(m);
    manifest["qubit0_noise"] = m.qubit0_noise;
  }
  auto rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      r[t.columns[i]] = row[i] ? nlohmann::json(*row[i]) : nlohmann::json(nullptr);
    }
    rows.push_back(std::move(r));
  }
  return {{"manifest", manifest}, {"columns", t.columns}, {"rows", rows}};
}

}  // namespace noisegates
