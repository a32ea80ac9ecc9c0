// SPDX-License-Identifier: Apache-2.0
//
// noisegates run      - scenario sweeps to CSV or JSON
// noisegates validate - release-gate report
#include "noisegates/scenarios.hpp"
#include "noisegates/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

using namespace noisegates;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitTrajectory = 3;

struct RunOptions {
  std::string scenario = "spinchain";
  std::string channel = "AmplitudeDamping";
  std::vector<double> gammas;
  int n = 4;
  double interval = 1.0;
  std::size_t trajectories = 10000;
  std::uint64_t seed = 1;
  std::optional<double> dt;
  std::size_t lambda_steps = 11;
  std::size_t time_steps = 11;
  std::optional<double> t_max;
  std::string output;
  std::string format = "csv";
  bool no_qubit0_noise = false;
  std::optional<bool> mc;
  std::string circuit;
  std::string profile = "uniform";
  std::vector<double> covariances;
  std::optional<double> center;
  bool timing = false;
  unsigned workers = 0;
};

RunManifest to_manifest(const RunOptions& o) {
  RunManifest m;
  m.scenario = parse_scenario_kind(o.scenario);
  m.profile = parse_coupling_profile(o.profile);
  const ChannelKind kind = parse_channel_kind(o.channel);
  m.channel = ChannelSpec{kind, o.gammas.empty() ? default_gammas(kind, m.profile) : o.gammas};
  m.n = o.n;
  m.interval = o.interval;
  m.covariances = o.covariances;
  m.center = o.center;
  m.qubit0_noise = !o.no_qubit0_noise;
  m.lambda = {"lambda", 0.0, 1.0, o.lambda_steps};
  const double default_t_max = m.scenario == ScenarioKind::SpinChain ? o.n * o.interval : 5.0;
  m.time = {"time", 0.0, o.t_max.value_or(default_t_max), o.time_steps};
  m.ensemble.n_trajectories = o.trajectories;
  m.ensemble.master_seed = o.seed;
  double max_gamma = 0.0;
  for (double g : m.channel.gammas) max_gamma = std::max(max_gamma, g);
  m.ensemble.dt = o.dt.value_or(max_gamma > 1.0 ? 0.01 / max_gamma : 0.01);
  m.ensemble.n_workers_hint = o.workers;
  m.monte_carlo = o.mc;
  m.timing = o.timing;
  if (!o.circuit.empty()) {
    std::ifstream in(o.circuit);
    if (!in) throw std::invalid_argument("cannot open circuit file '" + o.circuit + "'");
    m.circuit = nlohmann::json::parse(in).get<CircuitIR>();
  }
  return m;
}

int run(const RunOptions& o) {
  const RunManifest m = to_manifest(o);
  const ResultTable table = run_scenario(m);
  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + o.output + "'");
  }
  std::ostream& out = o.output.empty() ? std::cout : file;
  if (o.format == "json") {
    out << results_to_json(m, table).dump(2) << '\n';
  } else {
    write_csv(out, table);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise-gate trajectory simulator for decoherent qubit circuits"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario sweep and emit a result table");
  run_cmd->add_option("--scenario", ro.scenario, "cnot, spinchain or custom")->capture_default_str();
  run_cmd->add_option("--channel", ro.channel,
                      "BitFlip, PhaseFlip, BitPhaseFlip, AmplitudeDamping, Depolarizing, "
                      "GeneralizedAmplitudeDamping")
      ->capture_default_str();
  run_cmd->add_option("--gamma", ro.gammas, "Coupling constant; repeat for multi-rate channels");
  run_cmd->add_option("--n-qubits", ro.n, "Spin-chain length n (n + 1 qubits)")->capture_default_str();
  run_cmd->add_option("--interval", ro.interval, "Time between swaps")->capture_default_str();
  run_cmd->add_option("--trajectories", ro.trajectories)->capture_default_str();
  run_cmd->add_option("--seed", ro.seed)->capture_default_str();
  run_cmd->add_option("--dt", ro.dt,
                      "Euler-Maruyama step for depolarizing and GAD (default: 0.01 / max(1, largest gamma))");
  run_cmd->add_option("--lambda-steps", ro.lambda_steps)->capture_default_str();
  run_cmd->add_option("--time-steps", ro.time_steps)->capture_default_str();
  run_cmd->add_option("--t-max", ro.t_max,
                      "End of the time axis (default: n * interval, or 5 for cnot)");
  run_cmd->add_option("--output,-o", ro.output, "Output file (default: stdout)");
  run_cmd->add_option("--format", ro.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  run_cmd->add_flag("--no-qubit0-noise", ro.no_qubit0_noise, "Omit the noise gate on qubit 0");
  run_cmd->add_flag("--mc,!--no-mc", ro.mc, "Force Monte Carlo columns on or off");
  run_cmd->add_option("--circuit", ro.circuit, "Circuit JSON file for --scenario custom")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--profile", ro.profile, "uniform or gaussian")->capture_default_str();
  run_cmd->add_option("--cov", ro.covariances, "Gaussian profile variance; one per coupling");
  run_cmd->add_option("--center", ro.center, "Gaussian profile centre (default n / 2)");
  run_cmd->add_flag("--timing", ro.timing, "Append a wall_time_s column");
  run_cmd->add_option("--workers", ro.workers, "Worker threads (0: all cores)");

  ValidationOptions vo;
  std::vector<int> criteria;
  auto* val_cmd = app.add_subcommand("validate", "Run the release-gate suite");
  val_cmd->add_option("--seed", vo.seed)->capture_default_str();
  val_cmd->add_option("--trajectories", vo.trajectories)->capture_default_str();
  val_cmd->add_option("--criterion", criteria, "Restrict to these criteria (1-7)");
  val_cmd->add_option("--workers", vo.workers);
  val_cmd->add_flag("--inject-printed-gad-moments", vo.inject_printed_gad_moments)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*run_cmd) return run(ro);
    vo.criteria.insert(criteria.begin(), criteria.end());
    const auto results = run_validation(vo);
    write_report(std::cout, results);
    return all_passed(results) ? 0 : 1;
  } catch (const TrajectoryFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitTrajectory;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid manifest: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid manifest: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid circuit file: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
