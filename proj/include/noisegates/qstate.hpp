// SPDX-License-Identifier: Apache-2.0
//
// Dense multi-qubit states and density matrices.
//
// Basis convention: qubit 0 is the most significant bit of the basis index,
// so |i0 i1 ... i_{n-1}> has index i0*2^{n-1} + ... + i_{n-1}.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace noisegates {

template <typename Scalar>
using StateVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using DensityMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Gate2T = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Gate4T = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

using Complex = std::complex<double>;
using StateVector = StateVectorT<double>;
using DensityMatrix = DensityMatrixT<double>;
using Gate2 = Gate2T<double>;
using Gate4 = Gate4T<double>;
using QubitIndex = int;

/// Number of qubits addressed by a basis of size `dim`; throws unless `dim` is 2^n, n >= 1.
inline int num_qubits_for_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::size_t>(dim))) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not 2^n with n >= 1");
  }
  return std::countr_zero(static_cast<std::size_t>(dim));
}

template <typename Derived>
int num_qubits(const Eigen::MatrixBase<Derived>& v) {
  return num_qubits_for_dim(v.rows());
}

template <typename Scalar = double>
StateVectorT<Scalar> basis_state(int n_qubits, std::size_t index) {
  const auto dim = Eigen::Index{1} << n_qubits;
  if (n_qubits < 1 || static_cast<Eigen::Index>(index) >= dim) {
    throw std::out_of_range("basis index out of range");
  }
  StateVectorT<Scalar> s = StateVectorT<Scalar>::Zero(dim);
  s(static_cast<Eigen::Index>(index)) = 1;
  return s;
}

namespace detail {

inline void check_qubit(QubitIndex q, int n_qubits) {
  if (q < 0 || q >= n_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
  }
}

inline std::size_t bit_of(QubitIndex q, int n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - q);
}

}  // namespace detail

/// Applies a 2x2 gate to qubit `target` in place by strided pair traversal.
template <typename Scalar>
void apply_one_qubit_gate(StateVectorT<Scalar>& state, const Gate2T<Scalar>& g,
                          QubitIndex target) {
  const int n = num_qubits(state);
  detail::check_qubit(target, n);
  const auto stride = static_cast<Eigen::Index>(detail::bit_of(target, n));
  const Eigen::Index dim = state.size();
  const auto g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
    for (Eigen::Index k = 0; k < stride; ++k) {
      const Eigen::Index i0 = block + k;
      const Eigen::Index i1 = i0 + stride;
      const auto a0 = state(i0);
      const auto a1 = state(i1);
      state(i0) = g00 * a0 + g01 * a1;
      state(i1) = g10 * a0 + g11 * a1;
    }
  }
}

/// Applies a 4x4 gate to the ordered pair (q_hi, q_lo); q_hi is the leftmost
/// tensor factor of the gate's basis |q_hi q_lo>.
template <typename Scalar>
void apply_two_qubit_gate(StateVectorT<Scalar>& state, const Gate4T<Scalar>& g,
                          QubitIndex q_hi, QubitIndex q_lo) {
  const int n = num_qubits(state);
  detail::check_qubit(q_hi, n);
  detail::check_qubit(q_lo, n);
  if (q_hi == q_lo) {
    throw std::invalid_argument("two-qubit gate needs distinct qubits");
  }
  const std::size_t hi = detail::bit_of(q_hi, n);
  const std::size_t lo = detail::bit_of(q_lo, n);
  const auto dim = static_cast<std::size_t>(state.size());
  std::complex<Scalar> in[4];
  Eigen::Index idx[4];
  for (std::size_t base = 0; base < dim; ++base) {
    if ((base & hi) != 0 || (base & lo) != 0) continue;
    idx[0] = static_cast<Eigen::Index>(base);
    idx[1] = static_cast<Eigen::Index>(base | lo);
    idx[2] = static_cast<Eigen::Index>(base | hi);
    idx[3] = static_cast<Eigen::Index>(base | hi | lo);
    for (int r = 0; r < 4; ++r) in[r] = state(idx[r]);
    for (int r = 0; r < 4; ++r) {
      state(idx[r]) = g(r, 0) * in[0] + g(r, 1) * in[1] + g(r, 2) * in[2] + g(r, 3) * in[3];
    }
  }
}

/// acc += weight * |state><state|
template <typename Scalar>
void outer_accumulate(DensityMatrixT<Scalar>& acc, const StateVectorT<Scalar>& state,
                      Scalar weight) {
  if (acc.rows() != state.size() || acc.cols() != state.size()) {
    throw std::invalid_argument("outer_accumulate: dimension mismatch");
  }
  if (!(weight >= 0)) {
    throw std::invalid_argument("outer_accumulate: weight must be non-negative");
  }
  acc.noalias() += weight * state * state.adjoint();
}

template <typename Scalar>
DensityMatrixT<Scalar> outer(const StateVectorT<Scalar>& state) {
  return state * state.adjoint();
}

namespace detail {

// Sorted, de-duplicated, range-checked copy of the qubits to keep.
inline std::vector<QubitIndex> normalized_keep(std::span<const QubitIndex> keep, int n) {
  if (keep.empty()) {
    throw std::invalid_argument("partial trace: keep set is empty");
  }
  std::vector<QubitIndex> k(keep.begin(), keep.end());
  for (auto q : k) check_qubit(q, n);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

// Maps (kept index, traced index) to the full basis index.
class IndexSplitter {
 public:
  IndexSplitter(std::span<const QubitIndex> kept, int n) {
    std::vector<bool> is_kept(static_cast<std::size_t>(n), false);
    for (auto q : kept) is_kept[static_cast<std::size_t>(q)] = true;
    // Listed from the most significant qubit down so that the reduced
    // indices keep the qubit-0-is-MSB convention.
    for (QubitIndex q = 0; q < n; ++q) {
      (is_kept[static_cast<std::size_t>(q)] ? kept_bits_ : traced_bits_).push_back(bit_of(q, n));
    }
  }

  std::size_t kept_dim() const { return std::size_t{1} << kept_bits_.size(); }
  std::size_t traced_dim() const { return std::size_t{1} << traced_bits_.size(); }

  std::size_t full_index(std::size_t kept, std::size_t traced) const {
    return scatter(kept, kept_bits_) | scatter(traced, traced_bits_);
  }

 private:
  static std::size_t scatter(std::size_t value, const std::vector<std::size_t>& bits) {
    std::size_t out = 0;
    const std::size_t m = bits.size();
    for (std::size_t b = 0; b < m; ++b) {
      if (value & (std::size_t{1} << (m - 1 - b))) out |= bits[b];
    }
    return out;
  }

  std::vector<std::size_t> kept_bits_;
  std::vector<std::size_t> traced_bits_;
};

}  // namespace detail

/// Reduced density matrix over `keep` (ascending original qubit order).
template <typename Scalar>
DensityMatrixT<Scalar> partial_trace(const DensityMatrixT<Scalar>& dm,
                                     std::span<const QubitIndex> keep) {
  if (dm.rows() != dm.cols()) throw std::invalid_argument("partial trace: matrix not square");
  const int n = num_qubits_for_dim(dm.rows());
  const auto kept = detail::normalized_keep(keep, n);
  if (static_cast<int>(kept.size()) == n) return dm;
  const detail::IndexSplitter split(kept, n);
  const auto dk = split.kept_dim();
  const auto de = split.traced_dim();
  DensityMatrixT<Scalar> out = DensityMatrixT<Scalar>::Zero(static_cast<Eigen::Index>(dk),
                                                            static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dk; ++r) {
    for (std::size_t c = 0; c < dk; ++c) {
      std::complex<Scalar> sum = 0;
      for (std::size_t e = 0; e < de; ++e) {
        sum += dm(static_cast<Eigen::Index>(split.full_index(r, e)),
                  static_cast<Eigen::Index>(split.full_index(c, e)));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
    }
  }
  return out;
}

template <typename Scalar>
DensityMatrixT<Scalar> partial_trace(const DensityMatrixT<Scalar>& dm,
                                     std::initializer_list<QubitIndex> keep) {
  return partial_trace(dm, std::span<const QubitIndex>(keep.begin(), keep.size()));
}

/// Tr_{not keep} |state><state|, computed as M M^dagger with M the
/// (kept x traced) reshaping of the amplitudes.
template <typename Scalar>
DensityMatrixT<Scalar> reduced_density_matrix(const StateVectorT<Scalar>& state,
                                              std::span<const QubitIndex> keep) {
  const int n = num_qubits(state);
  const auto kept = detail::normalized_keep(keep, n);
  if (static_cast<int>(kept.size()) == n) return outer(state);
  const detail::IndexSplitter split(kept, n);
  const auto dk = static_cast<Eigen::Index>(split.kept_dim());
  const auto de = static_cast<Eigen::Index>(split.traced_dim());
  DensityMatrixT<Scalar> m(dk, de);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index e = 0; e < de; ++e) {
      m(r, e) = state(static_cast<Eigen::Index>(
          split.full_index(static_cast<std::size_t>(r), static_cast<std::size_t>(e))));
    }
  }
  return m * m.adjoint();
}

/// <target|dm|target>, clamped at zero. `target` must be normalized.
template <typename Scalar>
Scalar fidelity_pure(const DensityMatrixT<Scalar>& dm, const StateVectorT<Scalar>& target) {
  if (dm.rows() != target.size() || dm.cols() != target.size()) {
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  }
  if (std::abs(target.squaredNorm() - Scalar{1}) > Scalar(1e-10)) {
    throw std::invalid_argument("fidelity_pure: target state is not normalized");
  }
  const Scalar f = (target.adjoint() * dm * target)(0, 0).real();
  return std::max(f, Scalar{0});
}

/// Half the sum of singular values of (a - b).
template <typename Scalar>
Scalar trace_distance(const DensityMatrixT<Scalar>& a, const DensityMatrixT<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const DensityMatrixT<Scalar> diff = a - b;
  Eigen::JacobiSVD<DensityMatrixT<Scalar>> svd(diff);
  return Scalar{0.5} * svd.singularValues().sum();
}

template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Lifts a single-qubit operator onto `target` of an n-qubit register.
inline Eigen::MatrixXcd embed_one_qubit_operator(const Gate2& op, QubitIndex target, int n_qubits) {
  detail::check_qubit(target, n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const auto bit = static_cast<Eigen::Index>(detail::bit_of(target, n_qubits));
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int cb = (col & bit) ? 1 : 0;
    const Eigen::Index rest = col & ~bit;
    out(rest, col) += op(0, cb);
    out(rest | bit, col) += op(1, cb);
  }
  return out;
}

namespace gates {

inline Gate2 identity() { return Gate2::Identity(); }

inline Gate2 pauli_x() {
  Gate2 g;
  g << 0, 1, 1, 0;
  return g;
}

inline Gate2 pauli_y() {
  Gate2 g;
  g << 0, Complex(0, -1), Complex(0, 1), 0;
  return g;
}

inline Gate2 pauli_z() {
  Gate2 g;
  g << 1, 0, 0, -1;
  return g;
}

inline Gate2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Gate2 g;
  g << s, s, s, -s;
  return g;
}

/// |0><1|, the decay operator.
inline Gate2 sigma_minus() {
  Gate2 g;
  g << 0, 1, 0, 0;
  return g;
}

/// |1><0|, the excitation operator.
inline Gate2 sigma_plus() {
  Gate2 g;
  g << 0, 0, 1, 0;
  return g;
}

/// Control is the high (leftmost) operand.
inline Gate4 cnot() {
  Gate4 g = Gate4::Zero();
  g(0, 0) = 1;
  g(1, 1) = 1;
  g(2, 3) = 1;
  g(3, 2) = 1;
  return g;
}

inline Gate4 swap() {
  Gate4 g = Gate4::Zero();
  g(0, 0) = 1;
  g(1, 2) = 1;
  g(2, 1) = 1;
  g(3, 3) = 1;
  return g;
}

}  // namespace gates
}  // namespace noisegates
