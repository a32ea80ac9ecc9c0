// SPDX-License-Identifier: Apache-2.0
#include "noisegates/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace noisegates {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Custom: return "custom";
  }
  throw std::invalid_argument("unknown gate kind");
}

GateKind parse_gate_kind(std::string_view name) {
  for (auto kind : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::CNOT,
                    GateKind::SWAP, GateKind::Custom}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::SWAP: return 2;
    case GateKind::Custom: return 0;
    default: return 1;
  }
}

int GateEvent::arity() const {
  if (kind != GateKind::Custom) return gate_arity(kind);
  if (!matrix) throw std::invalid_argument("custom gate event without a matrix");
  if (matrix->rows() == 2 && matrix->cols() == 2) return 1;
  if (matrix->rows() == 4 && matrix->cols() == 4) return 2;
  throw std::invalid_argument("custom gate matrix must be 2x2 or 4x4");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("malformed circuit: " + what);
}

Gate2 one_qubit_matrix(const GateEvent& e) {
  switch (e.kind) {
    case GateKind::X: return gates::pauli_x();
    case GateKind::Y: return gates::pauli_y();
    case GateKind::Z: return gates::pauli_z();
    case GateKind::H: return gates::hadamard();
    case GateKind::Custom: return *e.matrix;
    default: throw std::invalid_argument("not a one-qubit gate");
  }
}

Gate4 two_qubit_matrix(const GateEvent& e) {
  switch (e.kind) {
    case GateKind::CNOT: return gates::cnot();
    case GateKind::SWAP: return gates::swap();
    case GateKind::Custom: return *e.matrix;
    default: throw std::invalid_argument("not a two-qubit gate");
  }
}

// Segment ordinal within its qubit, by start time.
std::vector<std::uint32_t> segment_ordinals(const CircuitIR& c) {
  std::vector<std::size_t> order(c.segments.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = c.segments[a];
    const auto& sb = c.segments[b];
    return sa.qubit != sb.qubit ? sa.qubit < sb.qubit : sa.t_a < sb.t_a;
  });
  std::vector<std::uint32_t> ordinal(c.segments.size());
  std::uint32_t next = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && c.segments[order[r]].qubit != c.segments[order[r - 1]].qubit) next = 0;
    ordinal[order[r]] = next++;
  }
  return ordinal;
}

}  // namespace

void CircuitIR::validate() const {
  require(n_qubits >= 1 && n_qubits <= 30, "n_qubits must be in [1, 30]");
  require(std::isfinite(t_start) && std::isfinite(t_end) && t_end >= t_start,
          "need finite t_start <= t_end");
  double last = t_start;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    const std::string tag = "event " + std::to_string(i);
    require(std::isfinite(e.time) && e.time >= t_start && e.time <= t_end,
            tag + " lies outside [t_start, t_end]");
    require(e.time >= last, tag + " is out of time order");
    last = e.time;
    int arity = 0;
    try {
      arity = e.arity();
    } catch (const std::invalid_argument& ex) {
      require(false, tag + ": " + ex.what());
    }
    require(static_cast<int>(e.operands.size()) == arity,
            tag + " has " + std::to_string(e.operands.size()) + " operands, expected " +
                std::to_string(arity));
    for (auto q : e.operands) require(q >= 0 && q < n_qubits, tag + " operand out of range");
    if (arity == 2) require(e.operands[0] != e.operands[1], tag + " repeats an operand");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    const std::string tag = "segment " + std::to_string(i);
    require(s.qubit >= 0 && s.qubit < n_qubits, tag + " qubit out of range");
    require(std::isfinite(s.t_a) && std::isfinite(s.t_b) && s.t_b >= s.t_a,
            tag + " needs t_a <= t_b");
    require(s.t_a >= t_start && s.t_b <= t_end, tag + " lies outside [t_start, t_end]");
    try {
      s.channel.validate();
    } catch (const std::invalid_argument& ex) {
      require(false, tag + ": " + ex.what());
    }
    for (const auto& e : events) {
      for (auto q : e.operands) {
        require(!(q == s.qubit && e.time > s.t_a && e.time < s.t_b),
                tag + " is interrupted by a gate on its qubit");
      }
    }
  }
  std::vector<std::size_t> order(segments.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& sa = segments[a];
    const auto& sb = segments[b];
    return sa.qubit != sb.qubit ? sa.qubit < sb.qubit : sa.t_a < sb.t_a;
  });
  for (std::size_t r = 1; r < order.size(); ++r) {
    const auto& prev = segments[order[r - 1]];
    const auto& cur = segments[order[r]];
    if (prev.qubit == cur.qubit) {
      require(cur.t_a >= prev.t_b,
              "segments on qubit " + std::to_string(cur.qubit) + " overlap");
    }
  }
}

StateVector run_trajectory(const CircuitIR& c, const StateVector& input,
                           std::uint64_t master_seed, std::uint64_t trajectory, double dt) {
  c.validate();
  if (input.size() != (Eigen::Index{1} << c.n_qubits)) {
    throw std::invalid_argument("run_trajectory: input dimension does not match the circuit");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("run_trajectory: dt must be positive");

  struct Step {
    double time;
    int priority;  // segments ending at a time act before gates at that time
    std::size_t index;
  };
  std::vector<Step> steps;
  steps.reserve(c.segments.size() + c.events.size());
  for (std::size_t i = 0; i < c.segments.size(); ++i) steps.push_back({c.segments[i].t_b, 0, i});
  for (std::size_t i = 0; i < c.events.size(); ++i) steps.push_back({c.events[i].time, 1, i});
  std::stable_sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
    return a.time != b.time ? a.time < b.time : a.priority < b.priority;
  });
  const auto ordinals = segment_ordinals(c);

  StateVector psi = input;
  for (const auto& step : steps) {
    if (step.priority == 0) {
      const auto& seg = c.segments[step.index];
      if (seg.channel.is_noiseless() || seg.t_b == seg.t_a) continue;
      const StreamKey key{master_seed, trajectory, static_cast<std::uint32_t>(seg.qubit), 0,
                          ordinals[step.index]};
      const auto gate = sample_noise_gate(seg.channel, key, seg.t_a, seg.t_b, dt);
      apply_one_qubit_gate(psi, gate.matrix, seg.qubit);
    } else {
      const auto& e = c.events[step.index];
      if (e.arity() == 1) {
        apply_one_qubit_gate(psi, one_qubit_matrix(e), e.operands[0]);
      } else {
        apply_two_qubit_gate(psi, two_qubit_matrix(e), e.operands[0], e.operands[1]);
      }
    }
  }
  return psi;
}

NoiseGateSample compose_chain_gate(std::span<const NoiseGateSample> segments) {
  if (segments.empty()) throw std::invalid_argument("compose_chain_gate: no segments");
  NoiseGateSample out = segments.front();
  for (std::size_t k = 1; k < segments.size(); ++k) {
    if (std::abs(segments[k].t_a - out.t_b) > 1e-12) {
      throw std::invalid_argument("compose_chain_gate: segments are not time-contiguous");
    }
    out.matrix = (segments[k].matrix * out.matrix).eval();
    out.t_b = segments[k].t_b;
  }
  return out;
}

CircuitIR truncate_circuit(const CircuitIR& c, double t) {
  if (!(t >= c.t_start && t <= c.t_end)) {
    throw std::invalid_argument("truncate_circuit: time outside the circuit span");
  }
  CircuitIR out;
  out.n_qubits = c.n_qubits;
  out.t_start = c.t_start;
  out.t_end = t;
  for (const auto& e : c.events) {
    if (e.time <= t) out.events.push_back(e);
  }
  for (const auto& s : c.segments) {
    if (s.t_a < t) out.segments.push_back({s.qubit, s.channel, s.t_a, std::min(s.t_b, t)});
  }
  return out;
}

CircuitIR build_cnot_scenario(const ChannelSpec& control_noise, const ChannelSpec& target_noise,
                              double t1, double t2, double t3) {
  if (!(t1 <= t2 && t2 <= t3)) {
    throw std::invalid_argument("cnot scenario: need t1 <= t2 <= t3");
  }
  CircuitIR c;
  c.n_qubits = 2;
  c.t_start = t1;
  c.t_end = t3;
  c.segments = {{0, control_noise, t1, t2},
                {1, target_noise, t1, t2},
                {0, control_noise, t2, t3},
                {1, target_noise, t2, t3}};
  c.events.push_back(GateEvent{t2, GateKind::CNOT, {0, 1}, std::nullopt});
  c.validate();
  return c;
}

CircuitIR build_cnot_scenario(double gamma1, double gamma2, ChannelKind kind, double t1,
                              double t2, double t3) {
  return build_cnot_scenario(ChannelSpec::single(kind, gamma1), ChannelSpec::single(kind, gamma2),
                             t1, t2, t3);
}

SpinChainScenario SpinChainScenario::uniform(int n, const ChannelSpec& channel, double interval) {
  channel.validate();
  SpinChainScenario s;
  s.n = n;
  s.kind = channel.kind;
  s.couplings.assign(static_cast<std::size_t>(n + 1), channel.gammas);
  s.times.resize(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) s.times[static_cast<std::size_t>(k)] = k * interval;
  return s;
}

void SpinChainScenario::validate() const {
  if (n < 2) throw std::invalid_argument("spin chain: n must be at least 2");
  if (n > 29) throw std::invalid_argument("spin chain: n too large for a dense state");
  const auto count = static_cast<std::size_t>(n + 1);
  if (couplings.size() != count) {
    throw std::invalid_argument("spin chain: need couplings for each of the n + 1 qubits");
  }
  for (QubitIndex q = 0; q <= n; ++q) channel_for(q).validate();
  if (times.size() != count) throw std::invalid_argument("spin chain: need n + 1 times");
  for (std::size_t k = 1; k < count; ++k) {
    if (!(times[k] >= times[k - 1])) {
      throw std::invalid_argument("spin chain: times must be non-decreasing");
    }
  }
  double norm = 0.0;
  for (const auto& a : pair) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument("spin chain: pair not normalized");
  if (bulk.size() != 0) {
    if (bulk.size() != (Eigen::Index{1} << (n - 1))) {
      throw std::invalid_argument("spin chain: bulk state must cover qubits 2..n");
    }
    if (std::abs(bulk.squaredNorm() - 1.0) > 1e-10) {
      throw std::invalid_argument("spin chain: bulk state not normalized");
    }
  }
}

ChannelSpec SpinChainScenario::channel_for(QubitIndex q) const {
  return ChannelSpec{kind, couplings.at(static_cast<std::size_t>(q))};
}

CircuitIR build_spinchain_scenario(const SpinChainScenario& s) {
  s.validate();
  const auto t = [&](int k) { return s.times[static_cast<std::size_t>(k)]; };
  CircuitIR c;
  c.n_qubits = s.n + 1;
  c.t_start = t(0);
  c.t_end = t(s.n);
  if (s.qubit0_noise) c.segments.push_back({0, s.channel_for(0), t(0), t(s.n)});
  for (int m = 1; m <= s.n; ++m) {
    const auto ch = s.channel_for(m);
    // Holds its own bulk amplitude until the swap at t_{m-1}, the travelling
    // qubit until t_m, then the bulk amplitude of qubit m + 1.
    if (m >= 2) c.segments.push_back({m, ch, t(0), t(m - 1)});
    c.segments.push_back({m, ch, t(m - 1), t(m)});
    if (m <= s.n - 1) c.segments.push_back({m, ch, t(m), t(s.n)});
  }
  for (int k = 1; k <= s.n - 1; ++k) {
    c.events.push_back(GateEvent{t(k), GateKind::SWAP, {k, k + 1}, std::nullopt});
  }
  c.validate();
  return c;
}

QubitIndex spinchain_position(const SpinChainScenario& s, double t) {
  QubitIndex pos = 1;
  for (int k = 1; k <= s.n - 1; ++k) {
    if (s.times[static_cast<std::size_t>(k)] <= t) pos = k + 1;
  }
  return pos;
}

StateVector spinchain_input_state(const SpinChainScenario& s) {
  s.validate();
  StateVector pair(4);
  for (int i = 0; i < 4; ++i) pair(i) = s.pair[static_cast<std::size_t>(i)];
  const StateVector bulk = s.bulk.size() != 0 ? s.bulk : basis_state(s.n - 1, 0);
  StateVector out(pair.size() * bulk.size());
  for (Eigen::Index i = 0; i < pair.size(); ++i) {
    out.segment(i * bulk.size(), bulk.size()) = pair(i) * bulk;
  }
  return out;
}

StateVector spinchain_target_state(const SpinChainScenario& s) {
  s.validate();
  StateVector pair(4);
  for (int i = 0; i < 4; ++i) pair(i) = s.pair[static_cast<std::size_t>(i)];
  return pair;
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const ChannelSpec& c) {
  j = nlohmann::json{{"kind", std::string(to_string(c.kind))}, {"gammas", c.gammas}};
}

void from_json(const nlohmann::json& j, ChannelSpec& c) {
  c.kind = parse_channel_kind(j.at("kind").get<std::string>());
  c.gammas = j.at("gammas").get<std::vector<double>>();
  c.validate();
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("custom gate matrix must be square");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& z = row.at(static_cast<std::size_t>(c));
      m(r, c) = z.is_array() ? Complex(z.at(0).get<double>(), z.at(1).get<double>())
                             : Complex(z.get<double>(), 0.0);
    }
  }
  return m;
}

}  // namespace

void to_json(nlohmann::json& j, const CircuitIR& c) {
  auto events = nlohmann::json::array();
  for (const auto& e : c.events) {
    nlohmann::json ev{{"t", e.time}, {"kind", std::string(to_string(e.kind))},
                      {"operands", e.operands}};
    if (e.kind == GateKind::Custom && e.matrix) ev["matrix"] = matrix_to_json(*e.matrix);
    events.push_back(std::move(ev));
  }
  auto segments = nlohmann::json::array();
  for (const auto& s : c.segments) {
    segments.push_back({{"qubit", s.qubit}, {"channel", s.channel}, {"t_a", s.t_a}, {"t_b", s.t_b}});
  }
  j = nlohmann::json{{"n_qubits", c.n_qubits}, {"t_start", c.t_start}, {"t_end", c.t_end},
                     {"events", events},       {"segments", segments}};
}

void from_json(const nlohmann::json& j, CircuitIR& c) {
  c = CircuitIR{};
  c.n_qubits = j.at("n_qubits").get<int>();
  double lo = 0.0, hi = 0.0;
  bool any = false;
  const auto widen = [&](double t) {
    lo = any ? std::min(lo, t) : t;
    hi = any ? std::max(hi, t) : t;
    any = true;
  };
  for (const auto& ev : j.value("events", nlohmann::json::array())) {
    GateEvent e;
    e.time = ev.at("t").get<double>();
    e.kind = parse_gate_kind(ev.at("kind").get<std::string>());
    e.operands = ev.at("operands").get<std::vector<QubitIndex>>();
    if (ev.contains("matrix")) e.matrix = matrix_from_json(ev.at("matrix"));
    widen(e.time);
    c.events.push_back(std::move(e));
  }
  for (const auto& sj : j.value("segments", nlohmann::json::array())) {
    NoiseSegment s;
    s.qubit = sj.at("qubit").get<QubitIndex>();
    s.channel = sj.at("channel").get<ChannelSpec>();
    s.t_a = sj.at("t_a").get<double>();
    s.t_b = sj.at("t_b").get<double>();
    widen(s.t_a);
    widen(s.t_b);
    c.segments.push_back(std::move(s));
  }
  c.t_start = j.contains("t_start") ? j.at("t_start").get<double>() : lo;
  c.t_end = j.contains("t_end") ? j.at("t_end").get<double>() : hi;
  c.validate();
}

}  // namespace noisegates
