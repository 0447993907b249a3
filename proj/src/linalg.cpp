#include "tomoci/linalg.hpp"

#include <Eigen/SVD>

namespace tomoci {

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("HermitianOperator: matrix is not square");
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw InvalidArgument("HermitianOperator: matrix is not Hermitian (max |m - m^dag| = " +
                          std::to_string(asym) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

RealVector HermitianOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double HermitianOperator::min_eigenvalue() const { return eigenvalues()(0); }

DensityMatrix DensityMatrix::make(const ComplexMatrix& m) {
  HermitianOperator op(m);
  if (std::abs(op.trace() - 1.0) > kTraceTol) {
    throw InvalidArgument("DensityMatrix: trace is " + std::to_string(op.trace()) + ", expected 1");
  }
  const bool physical = op.min_eigenvalue() >= -kPsdTol;
  return {std::move(op), physical};
}

DensityMatrix DensityMatrix::make_physical(const ComplexMatrix& m) {
  DensityMatrix rho = make(m);
  if (!rho.physical) {
    throw InvalidArgument("DensityMatrix: operator has negative eigenvalues");
  }
  return rho;
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidArgument("DensityMatrix::pure: zero vector");
  const ComplexVector u = psi / n;
  return make_physical(u * u.adjoint());
}

PauliBasis::PauliBasis(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > kMaxBasisQubits) {
    throw InvalidArgument("pauli_basis: qubit count must be in [1, " +
                          std::to_string(kMaxBasisQubits) + "], got " + std::to_string(qubits));
  }
  const std::size_t n = std::size_t{1} << (2 * qubits);
  x_.resize(n);
  z_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t x = 0, z = 0;
    for (int k = 0; k < qubits; ++k) {
      const auto letter = (i >> (2 * (qubits - 1 - k))) & 3u;
      const std::uint32_t bit = 1u << (qubits - 1 - k);
      if (letter == 1 || letter == 2) x |= bit;
      if (letter == 2 || letter == 3) z |= bit;
    }
    x_[i] = x;
    z_[i] = z;
  }
}

Complex PauliBasis::phase(Index i) const {
  static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[__builtin_popcount(x_mask(i) & z_mask(i)) & 3];
}

ComplexMatrix PauliBasis::element(Index i) const {
  RealVector e = RealVector::Zero(size());
  e(i) = 1.0;
  return operator_from_coordinates(e, *this);
}

std::vector<ComplexMatrix> PauliBasis::elements() const {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) out.push_back(element(i));
  return out;
}

std::string PauliBasis::label(Index i) const {
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(static_cast<std::size_t>(qubits_), 'I');
  for (int k = 0; k < qubits_; ++k) {
    s[static_cast<std::size_t>(k)] = letters[(i >> (2 * (qubits_ - 1 - k))) & 3];
  }
  return s;
}

PauliBasis pauli_basis(int qubits) { return PauliBasis(qubits); }

PauliVector to_pauli_vector(const HermitianOperator& op, const PauliBasis& basis) {
  return {pauli_coordinates(op.matrix(), basis)};
}

HermitianOperator from_pauli_vector(const PauliVector& r, const PauliBasis& basis) {
  return HermitianOperator(operator_from_coordinates(r.coords, basis));
}

double hs_distance(const HermitianOperator& a, const HermitianOperator& b) {
  return hs_distance(a.matrix(), b.matrix());
}

ComplexMatrix trace_out_second(const ComplexMatrix& m, Index d_first, Index d_second) {
  if (m.rows() != d_first * d_second || m.cols() != m.rows()) {
    throw InvalidArgument("trace_out_second: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_first, d_first);
  for (Index i = 0; i < d_first; ++i)
    for (Index j = 0; j < d_first; ++j)
      for (Index k = 0; k < d_second; ++k) out(i, j) += m(i * d_second + k, j * d_second + k);
  return out;
}

ComplexMatrix trace_out_first(const ComplexMatrix& m, Index d_first, Index d_second) {
  if (m.rows() != d_first * d_second || m.cols() != m.rows()) {
    throw InvalidArgument("trace_out_first: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_second, d_second);
  for (Index k = 0; k < d_first; ++k) out += m.block(k * d_second, k * d_second, d_second, d_second);
  return out;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

RealMatrix left_pseudo_inverse(const RealMatrix& a) {
  if (a.rows() < a.cols() || a.cols() == 0) {
    throw NotInformationallyComplete("left_pseudo_inverse: matrix is " + std::to_string(a.rows()) +
                                     "x" + std::to_string(a.cols()) +
                                     ", needs at least as many rows as columns");
  }
  // Householder QR gives the pseudo-inverse R^-1 Q^T to working precision;
  // the singular values of R (those of a) decide the rank. Eigen's
  // divide-and-conquer SVD loses accuracy in its singular vectors when
  // singular values are highly degenerate, as they are for product designs.
  const Eigen::HouseholderQR<RealMatrix> qr(a);
  const Index n = a.cols();
  const RealMatrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const RealVector s = Eigen::BDCSVD<RealMatrix>(r).singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smax > 0.0) || smin < kRankTol * smax) {
    throw NotInformationallyComplete("left_pseudo_inverse: rank deficient (sigma_min/sigma_max = " +
                                     std::to_string(smax > 0.0 ? smin / smax : 0.0) + ")");
  }
  const RealMatrix q = qr.householderQ() * RealMatrix::Identity(a.rows(), n);
  return r.triangularView<Eigen::Upper>().solve(q.transpose());
}

Index numerical_rank(const RealMatrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<RealMatrix> svd(a);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return (s.array() >= rel_tol * s(0)).count();
}

}  // namespace tomoci
