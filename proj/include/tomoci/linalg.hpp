#pragma once

// Pauli-basis geometry of Hermitian operators on m qubits.
//
// Pauli strings are indexed lexicographically in {I, X, Y, Z} with qubit 0
// as the most significant base-4 digit, so index 0 is the identity. The same
// convention orders computational-basis states (qubit 0 is the leading bit).
// Coordinates are normalized as r_i = Tr(op sigma_i) / d so that
// op = sum_i r_i sigma_i.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tomoci/errors.hpp"

namespace tomoci {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kRankTol = 1e-10;
inline constexpr int kMaxBasisQubits = 10;

class HermitianOperator {
 public:
  HermitianOperator() = default;
  // Throws InvalidArgument unless m is square and Hermitian to kHermitianTol.
  // The stored matrix is exactly Hermitian (symmetrized).
  explicit HermitianOperator(const ComplexMatrix& m);

  Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace().real(); }

  // Ascending eigenvalues.
  RealVector eigenvalues() const;
  double min_eigenvalue() const;

 private:
  ComplexMatrix m_;
};

// A unit-trace Hermitian operator. `physical` records positivity; estimates
// from linear inversion are allowed to be non-physical.
struct DensityMatrix {
  HermitianOperator op;
  bool physical = false;

  // Throws InvalidArgument if |Tr m - 1| > kTraceTol.
  static DensityMatrix make(const ComplexMatrix& m);
  // Same, but additionally rejects operators with eigenvalues < -kPsdTol.
  static DensityMatrix make_physical(const ComplexMatrix& m);
  static DensityMatrix pure(const ComplexVector& psi);

  Index dim() const noexcept { return op.dim(); }
  const ComplexMatrix& matrix() const noexcept { return op.matrix(); }
  double purity() const { return (op.matrix() * op.matrix()).trace().real(); }
};

class PauliBasis {
 public:
  // Throws InvalidArgument for qubits < 1 or qubits > kMaxBasisQubits.
  explicit PauliBasis(int qubits);

  int qubits() const noexcept { return qubits_; }
  Index dim() const noexcept { return Index{1} << qubits_; }
  Index size() const noexcept { return static_cast<Index>(x_.size()); }

  std::uint32_t x_mask(Index i) const { return x_[static_cast<std::size_t>(i)]; }
  std::uint32_t z_mask(Index i) const { return z_[static_cast<std::size_t>(i)]; }
  // i^(number of Y factors)
  Complex phase(Index i) const;

  ComplexMatrix element(Index i) const;
  std::vector<ComplexMatrix> elements() const;
  std::string label(Index i) const;

 private:
  int qubits_;
  std::vector<std::uint32_t> x_;
  std::vector<std::uint32_t> z_;
};

PauliBasis pauli_basis(int qubits);

struct PauliVector {
  RealVector coords;
};

namespace detail {

inline double parity_sign(std::uint32_t bits) {
  return (__builtin_popcount(bits) & 1u) ? -1.0 : 1.0;
}

}  // namespace detail

// Tr(op sigma_i) / d for every basis element, exploiting that each Pauli
// string is a signed permutation matrix: <r|sigma|c> is nonzero only for
// c = r ^ x, with value phase * (-1)^popcount(z & c).
template <typename Derived>
RealVector pauli_coordinates(const Eigen::MatrixBase<Derived>& op, const PauliBasis& basis) {
  const Index d = basis.dim();
  if (op.rows() != d || op.cols() != d) {
    throw InvalidArgument("pauli_coordinates: operator is " + std::to_string(op.rows()) + "x" +
                          std::to_string(op.cols()) + ", basis dimension " + std::to_string(d));
  }
  RealVector r(basis.size());
  for (Index i = 0; i < basis.size(); ++i) {
    const std::uint32_t x = basis.x_mask(i);
    const std::uint32_t z = basis.z_mask(i);
    Complex acc{0.0, 0.0};
    for (Index row = 0; row < d; ++row) {
      const auto col = static_cast<Index>(static_cast<std::uint32_t>(row) ^ x);
      acc += detail::parity_sign(z & static_cast<std::uint32_t>(col)) * op(col, row);
    }
    r(i) = (basis.phase(i) * acc).real() / static_cast<double>(d);
  }
  return r;
}

template <typename Derived>
ComplexMatrix operator_from_coordinates(const Eigen::MatrixBase<Derived>& coords,
                                        const PauliBasis& basis) {
  if (coords.size() != basis.size()) {
    throw InvalidArgument("operator_from_coordinates: expected " + std::to_string(basis.size()) +
                          " coordinates, got " + std::to_string(coords.size()));
  }
  const Index d = basis.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < basis.size(); ++i) {
    const double c = coords(i);
    if (c == 0.0) continue;
    const std::uint32_t x = basis.x_mask(i);
    const std::uint32_t z = basis.z_mask(i);
    const Complex ph = c * basis.phase(i);
    for (Index row = 0; row < d; ++row) {
      const auto col = static_cast<Index>(static_cast<std::uint32_t>(row) ^ x);
      m(row, col) += detail::parity_sign(z & static_cast<std::uint32_t>(col)) * ph;
    }
  }
  return m;
}

PauliVector to_pauli_vector(const HermitianOperator& op, const PauliBasis& basis);
HermitianOperator from_pauli_vector(const PauliVector& r, const PauliBasis& basis);

// sqrt(Tr[(a - b)^2] / 2)
template <typename DA, typename DB>
double hs_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("hs_distance: dimension mismatch");
  }
  return std::sqrt((a - b).squaredNorm() / 2.0);
}

double hs_distance(const HermitianOperator& a, const HermitianOperator& b);

template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Partial traces of an operator on H_first (x) H_second.
ComplexMatrix trace_out_second(const ComplexMatrix& m, Index d_first, Index d_second);
ComplexMatrix trace_out_first(const ComplexMatrix& m, Index d_first, Index d_second);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

// Left pseudo-inverse (A^T A)^{-1} A^T, computed from a thin SVD. Throws
// NotInformationallyComplete if A is rank deficient (smallest singular value
// below kRankTol times the largest).
RealMatrix left_pseudo_inverse(const RealMatrix& a);

Index numerical_rank(const RealMatrix& a, double rel_tol = kRankTol);

}  // namespace tomoci
