// SPDX-License-Identifier: Apache-2.0
#include "noisegates/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <vector>

namespace noisegates {

void EnsembleConfig::validate() const {
  if (n_trajectories < 1) throw std::invalid_argument("ensemble: need at least one trajectory");
  if (!(dt > 0.0)) throw std::invalid_argument("ensemble: dt must be positive");
}

double DensityEstimate::trace_distance_std_error() const {
  return 0.5 * std::sqrt(static_cast<double>(std_error.rows())) * std_error.norm();
}

namespace {

constexpr std::size_t kBlockSize = 512;

// Welford accumulators with Chan's pairwise merge.
struct ScalarStats {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const ScalarStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

struct MatrixStats {
  std::size_t n = 0;
  DensityMatrix mean;
  Eigen::MatrixXd m2;

  void add(const DensityMatrix& x) {
    if (n == 0) {
      mean = DensityMatrix::Zero(x.rows(), x.cols());
      m2 = Eigen::MatrixXd::Zero(x.rows(), x.cols());
    }
    ++n;
    const DensityMatrix delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += (delta.conjugate().cwiseProduct(x - mean)).real();
  }

  void merge(const MatrixStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const DensityMatrix delta = o.mean - mean;
    mean += delta * (static_cast<double>(o.n) / total);
    m2 += o.m2 + delta.cwiseAbs2() * (static_cast<double>(n) * static_cast<double>(o.n) / total);
    n += o.n;
  }
};

unsigned worker_count(const EnsembleConfig& cfg, std::size_t blocks) {
  unsigned w = cfg.n_workers_hint != 0 ? cfg.n_workers_hint : std::thread::hardware_concurrency();
  w = std::max(1u, w);
  return static_cast<unsigned>(std::min<std::size_t>(w, blocks));
}

// Runs fill(stats, begin, end) over fixed blocks on a worker pool and merges
// the block results in block order.
template <typename Stats, typename Fill>
Stats block_reduce(const EnsembleConfig& cfg, Fill fill) {
  cfg.validate();
  const std::size_t n = cfg.n_trajectories;
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Stats> partial(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        fill(partial[b], b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = blocks;
        return;
      }
    }
  };

  const unsigned workers = worker_count(cfg, blocks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const TrajectoryFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw TrajectoryFailure(std::string("trajectory failed: ") + e.what());
    }
  }
  Stats total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

StateVector checked(StateVector psi, std::uint64_t traj) {
  if (!psi.allFinite()) {
    throw TrajectoryFailure("trajectory " + std::to_string(traj) + " produced a non-finite state");
  }
  return psi;
}

double sample_std_error(const ScalarStats& s) {
  if (s.n < 2) return 0.0;
  const double var = s.m2 / static_cast<double>(s.n - 1);
  return std::sqrt(std::max(var, 0.0) / static_cast<double>(s.n));
}

}  // namespace

Estimate estimate_mean(const SampleFn& sample, const EnsembleConfig& cfg) {
  const auto stats = block_reduce<ScalarStats>(
      cfg, [&](ScalarStats& s, std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
          const double x = sample(t);
          if (!std::isfinite(x)) {
            throw TrajectoryFailure("trajectory " + std::to_string(t) + " produced a non-finite value");
          }
          s.add(x);
        }
      });
  return {stats.mean, sample_std_error(stats), stats.n};
}

DensityEstimate estimate_density_matrix(const TrajectoryFn& run,
                                        std::span<const QubitIndex> keep,
                                        const EnsembleConfig& cfg) {
  const auto stats = block_reduce<MatrixStats>(
      cfg, [&](MatrixStats& s, std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
          s.add(reduced_density_matrix(checked(run(t), t), keep));
        }
      });
  DensityEstimate out;
  out.mean = stats.mean;
  out.n = stats.n;
  if (stats.n >= 2) {
    const double scale = 1.0 / (static_cast<double>(stats.n - 1) * static_cast<double>(stats.n));
    out.std_error = (stats.m2 * scale).cwiseMax(0.0).cwiseSqrt();
  } else {
    out.std_error = Eigen::MatrixXd::Zero(stats.mean.rows(), stats.mean.cols());
  }
  return out;
}

namespace {

void require_keep_in_range(const CircuitIR& c, std::span<const QubitIndex> keep) {
  for (auto q : keep) {
    if (q < 0 || q >= c.n_qubits) throw std::invalid_argument("kept qubit out of range");
  }
}

}  // namespace

TrajectoryFn circuit_trajectories(const CircuitIR& c, const StateVector& input,
                                  const EnsembleConfig& cfg) {
  c.validate();
  cfg.validate();
  if (input.size() != (Eigen::Index{1} << c.n_qubits)) {
    throw std::invalid_argument("input dimension does not match the circuit");
  }
  return [c, input, seed = cfg.master_seed, dt = cfg.dt](std::uint64_t traj) {
    return run_trajectory(c, input, seed, traj, dt);
  };
}

DensityEstimate estimate_density_matrix(const CircuitIR& c, const StateVector& input,
                                        std::span<const QubitIndex> keep,
                                        const EnsembleConfig& cfg) {
  require_keep_in_range(c, keep);
  return estimate_density_matrix(circuit_trajectories(c, input, cfg), keep, cfg);
}

Estimate estimate_fidelity(const TrajectoryFn& run, const StateVector& target,
                           std::span<const QubitIndex> keep, const EnsembleConfig& cfg) {
  if (std::abs(target.squaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument("estimate_fidelity: target state is not normalized");
  }
  const std::set<QubitIndex> distinct(keep.begin(), keep.end());
  if (target.size() != (Eigen::Index{1} << distinct.size())) {
    throw std::invalid_argument("estimate_fidelity: target dimension does not match keep set");
  }
  return estimate_mean(
      [&](std::uint64_t t) {
        const DensityMatrix rho = reduced_density_matrix(checked(run(t), t), keep);
        return (target.adjoint() * rho * target)(0, 0).real();
      },
      cfg);
}

Estimate estimate_fidelity(const CircuitIR& c, const StateVector& input,
                           const StateVector& target, std::span<const QubitIndex> keep,
                           const EnsembleConfig& cfg) {
  require_keep_in_range(c, keep);
  return estimate_fidelity(circuit_trajectories(c, input, cfg), target, keep, cfg);
}

Estimate estimate_norm_squared(const CircuitIR& c, const StateVector& input,
                               const EnsembleConfig& cfg) {
  const auto run = circuit_trajectories(c, input, cfg);
  return estimate_mean([&](std::uint64_t t) { return checked(run(t), t).squaredNorm(); }, cfg);
}

}  // namespace noisegates
