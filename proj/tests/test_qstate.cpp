// SPDX-License-Identifier: Apache-2.0
#include "noisegates/qstate.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace noisegates;
using noisegates::testing::max_abs;

namespace {

StateVector ket(std::initializer_list<Complex> amps) {
  StateVector s(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) s(i++) = a;
  return s;
}

// Reference: explicit Kronecker product I (x) ... (x) g (x) ... (x) I.
Eigen::MatrixXcd kron_lift(const Gate2& g, int target, int n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::MatrixXcd f = q == target ? Eigen::MatrixXcd(g) : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    out = next;
  }
  return out;
}

}  // namespace

TEST_CASE("single-qubit gate examples") {
  StateVector s = basis_state(1, 0);
  apply_one_qubit_gate(s, gates::identity(), 0);
  CHECK(max_abs(s - basis_state(1, 0)) == 0.0);

  apply_one_qubit_gate(s, gates::pauli_x(), 0);
  CHECK(max_abs(s - basis_state(1, 1)) == 0.0);

  StateVector h = basis_state(1, 0);
  apply_one_qubit_gate(h, gates::hadamard(), 0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(h - ket({r, r})) < 1e-12);
}

TEST_CASE("single-qubit gate matches the Kronecker lift on every target") {
  std::mt19937_64 rng(7);
  Gate2 g;
  g << Complex(0.3, 0.1), Complex(-0.2, 0.9), Complex(1.1, 0.0), Complex(0.0, -0.4);
  for (int target = 0; target < 4; ++target) {
    const StateVector psi = noisegates::testing::random_state(rng, 4);
    StateVector out = psi;
    apply_one_qubit_gate(out, g, target);
    CHECK(max_abs(out - kron_lift(g, target, 4) * psi) < 1e-12);
  }
}

TEST_CASE("two-qubit gate examples") {
  StateVector s = basis_state(2, 0b10);
  apply_two_qubit_gate(s, gates::cnot(), 0, 1);
  CHECK(max_abs(s - basis_state(2, 0b11)) == 0.0);

  StateVector w = basis_state(2, 0b01);
  apply_two_qubit_gate(w, gates::swap(), 0, 1);
  CHECK(max_abs(w - basis_state(2, 0b10)) == 0.0);

  const double r = 1.0 / std::sqrt(2.0);
  StateVector b = ket({r, 0, r, 0});
  apply_two_qubit_gate(b, gates::cnot(), 0, 1);
  CHECK(max_abs(b - ket({r, 0, 0, r})) < 1e-15);
}

TEST_CASE("two-qubit gate operand order and non-adjacent qubits") {
  // Control on qubit 2, target on qubit 0 of |001> -> |101>.
  StateVector s = basis_state(3, 0b001);
  apply_two_qubit_gate(s, gates::cnot(), 2, 0);
  CHECK(max_abs(s - basis_state(3, 0b101)) == 0.0);

  // SWAP across a spectator.
  StateVector t = basis_state(3, 0b100);
  apply_two_qubit_gate(t, gates::swap(), 0, 2);
  CHECK(max_abs(t - basis_state(3, 0b001)) == 0.0);
}

TEST_CASE("gate application errors") {
  StateVector s = basis_state(2, 0);
  CHECK_THROWS_AS(apply_one_qubit_gate(s, gates::pauli_x(), 2), std::out_of_range);
  CHECK_THROWS_AS(apply_one_qubit_gate(s, gates::pauli_x(), -1), std::out_of_range);
  CHECK_THROWS_AS(apply_two_qubit_gate(s, gates::cnot(), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(apply_two_qubit_gate(s, gates::cnot(), 0, 5), std::out_of_range);
  StateVector odd(3);
  CHECK_THROWS_AS(apply_one_qubit_gate(odd, gates::pauli_x(), 0), std::invalid_argument);
}

TEST_CASE("gate application is linear") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  Gate2 g;
  g << Complex(1.0, 0.2), Complex(0.0, 0.5), Complex(0.0, 0.0), Complex(0.3, 0.0);
  Gate4 g4 = Gate4::Random();
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector u = noisegates::testing::random_state(rng, 3, false);
    const StateVector v = noisegates::testing::random_state(rng, 3, false);
    const Complex alpha(gauss(rng), gauss(rng));
    const Complex beta(gauss(rng), gauss(rng));
    StateVector lhs = alpha * u + beta * v;
    StateVector gu = u, gv = v;
    apply_one_qubit_gate(lhs, g, 1);
    apply_one_qubit_gate(gu, g, 1);
    apply_one_qubit_gate(gv, g, 1);
    CHECK(max_abs(lhs - (alpha * gu + beta * gv)) < 1e-12);

    StateVector lhs2 = alpha * u + beta * v;
    gu = u;
    gv = v;
    apply_two_qubit_gate(lhs2, g4, 2, 0);
    apply_two_qubit_gate(gu, g4, 2, 0);
    apply_two_qubit_gate(gv, g4, 2, 0);
    CHECK(max_abs(lhs2 - (alpha * gu + beta * gv)) < 1e-12);
  }
}

TEST_CASE("unitary gates preserve the squared norm") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    StateVector s = noisegates::testing::random_state(rng, 4, false) * 1.7;
    const double before = s.squaredNorm();
    apply_one_qubit_gate(s, gates::hadamard(), trial % 4);
    apply_two_qubit_gate(s, gates::cnot(), trial % 4, (trial + 1) % 4);
    apply_two_qubit_gate(s, gates::swap(), (trial + 2) % 4, trial % 4);
    CHECK(std::abs(s.squaredNorm() - before) < 1e-12);
  }
}

TEST_CASE("outer_accumulate") {
  DensityMatrix acc = DensityMatrix::Zero(2, 2);
  outer_accumulate(acc, basis_state(1, 0), 1.0);
  CHECK(max_abs(acc - Eigen::Vector2cd(1, 0).asDiagonal().toDenseMatrix()) == 0.0);
  outer_accumulate(acc, basis_state(1, 1), 1.0);
  CHECK(max_abs(acc - DensityMatrix::Identity(2, 2)) == 0.0);
  const DensityMatrix before = acc;
  outer_accumulate(acc, basis_state(1, 1), 0.0);
  CHECK(max_abs(acc - before) == 0.0);
  CHECK_THROWS_AS(outer_accumulate(acc, basis_state(2, 0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(outer_accumulate(acc, basis_state(1, 0), -1.0), std::invalid_argument);
}

TEST_CASE("partial trace examples") {
  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrix bell = outer(ket({r, 0, 0, r}));
  const std::vector<QubitIndex> keep0{0};
  CHECK(max_abs(partial_trace(bell, std::span<const QubitIndex>(keep0)) -
                0.5 * DensityMatrix::Identity(2, 2)) < 1e-15);

  std::mt19937_64 rng(5);
  const StateVector psi = noisegates::testing::random_state(rng, 1);
  const StateVector phi = noisegates::testing::random_state(rng, 2);
  StateVector prod(8);
  for (Eigen::Index i = 0; i < 2; ++i) prod.segment(4 * i, 4) = psi(i) * phi;
  CHECK(max_abs(partial_trace(outer(prod), {0}) - outer(psi)) < 1e-12);
  CHECK(max_abs(partial_trace(outer(prod), {1, 2}) - outer(phi)) < 1e-12);
}

TEST_CASE("partial trace matches explicit index summation") {
  std::mt19937_64 rng(13);
  const DensityMatrix rho = noisegates::testing::random_density_matrix(rng, 3);
  // Keep qubits 0 and 2, trace qubit 1: index = 4*i0 + 2*i1 + i2.
  DensityMatrix oracle = DensityMatrix::Zero(4, 4);
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b2 = 0; b2 < 2; ++b2)
          for (int e = 0; e < 2; ++e)
            oracle(2 * a0 + a2, 2 * b0 + b2) += rho(4 * a0 + 2 * e + a2, 4 * b0 + 2 * e + b2);
  CHECK(max_abs(partial_trace(rho, {2, 0}) - oracle) < 1e-12);
}

TEST_CASE("partial trace invariants") {
  std::mt19937_64 rng(17);
  const DensityMatrix rho = noisegates::testing::random_density_matrix(rng, 3) * 1.3;
  CHECK(max_abs(partial_trace(rho, {0, 1, 2}) - rho) == 0.0);
  const std::vector<std::vector<QubitIndex>> keeps{{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}};
  for (const auto& k : keeps) {
    const auto red = partial_trace(rho, std::span<const QubitIndex>(k));
    CHECK(std::abs(red.trace() - rho.trace()) < 1e-12);
  }
  const StateVector psi = noisegates::testing::random_state(rng, 3, false);
  for (const auto& k : keeps) {
    const std::span<const QubitIndex> ks(k);
    CHECK(max_abs(reduced_density_matrix(psi, ks) - partial_trace(outer(psi), ks)) < 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(rho, std::span<const QubitIndex>{}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {3}), std::out_of_range);
}

TEST_CASE("fidelity_pure") {
  std::mt19937_64 rng(19);
  const StateVector psi = noisegates::testing::random_state(rng, 2);
  CHECK(fidelity_pure(outer(psi), psi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity_pure(outer(basis_state(1, 0)), basis_state(1, 1)) == 0.0);
  const StateVector any = noisegates::testing::random_state(rng, 1);
  CHECK(fidelity_pure(DensityMatrix(0.5 * DensityMatrix::Identity(2, 2)), any) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Scaling an unnormalized trajectory state by c scales the value by |c|^2.
  const Complex c(0.6, -1.1);
  CHECK(fidelity_pure(outer(StateVector(c * psi)), psi) ==
        doctest::Approx(std::norm(c)).epsilon(1e-12));

  CHECK_THROWS_AS(fidelity_pure(outer(psi), StateVector(2.0 * psi)), std::invalid_argument);
  CHECK_THROWS_AS(fidelity_pure(outer(psi), any), std::invalid_argument);
}

TEST_CASE("trace_distance") {
  const DensityMatrix up = outer(basis_state(1, 0));
  const DensityMatrix down = outer(basis_state(1, 1));
  const DensityMatrix mixed = 0.5 * DensityMatrix::Identity(2, 2);
  CHECK(trace_distance(up, up) == 0.0);
  CHECK(trace_distance(up, down) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(up, mixed) == doctest::Approx(0.5).epsilon(1e-14));
  std::mt19937_64 rng(23);
  const auto a = noisegates::testing::random_density_matrix(rng, 2);
  const auto b = noisegates::testing::random_density_matrix(rng, 2);
  CHECK(trace_distance(a, b) == doctest::Approx(trace_distance(b, a)).epsilon(1e-14));
  CHECK(trace_distance(a, b) > 0.0);
  CHECK_THROWS_AS(trace_distance(up, DensityMatrix(DensityMatrix::Identity(4, 4))),
                  std::invalid_argument);
}

TEST_CASE("embedded one-qubit operator matches gate application") {
  std::mt19937_64 rng(29);
  const StateVector psi = noisegates::testing::random_state(rng, 3);
  for (int q = 0; q < 3; ++q) {
    StateVector applied = psi;
    apply_one_qubit_gate(applied, gates::sigma_minus(), q);
    CHECK(max_abs(embed_one_qubit_operator(gates::sigma_minus(), q, 3) * psi - applied) < 1e-15);
  }
}

TEST_CASE("templated on the real scalar type") {
  StateVectorT<float> s = basis_state<float>(2, 0b10);
  apply_two_qubit_gate<float>(s, gates::cnot().cast<std::complex<float>>(), 0, 1);
  CHECK(std::abs(s(3) - std::complex<float>(1.0f)) == 0.0f);
}
