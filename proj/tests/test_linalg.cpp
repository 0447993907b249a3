#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tomoci/protocols.hpp"
#include "tomoci/qst.hpp"

using namespace tomoci;
using namespace testing;

TEST_CASE("pauli basis for one qubit is I, X, Y, Z") {
  const PauliBasis b(1);
  REQUIRE(b.size() == 4);
  CHECK(b.element(0).isApprox(ComplexMatrix::Identity(2, 2)));
  CHECK(b.element(1).isApprox(pauli_x()));
  CHECK(b.element(2).isApprox(pauli_y()));
  CHECK(b.element(3).isApprox(pauli_z()));
  CHECK((b.element(1) * b.element(1)).trace().real() == doctest::Approx(2.0));
  CHECK(b.label(2) == "Y");
}

TEST_CASE("pauli basis ordering matches explicit tensor products") {
  const PauliBasis b2(2);
  const PauliBasis b1(1);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      CHECK((b2.element(4 * i + j) - kron(b1.element(i), b1.element(j))).norm() < 1e-15);
    }
  CHECK(b2.label(6) == "XY");
}

TEST_CASE("two-qubit basis elements are traceless except the identity") {
  const PauliBasis b(2);
  REQUIRE(b.size() == 16);
  CHECK(b.element(0).trace().real() == doctest::Approx(4.0));
  for (Index i = 1; i < 16; ++i) CHECK(std::abs(b.element(i).trace()) < 1e-15);
}

TEST_CASE("three-qubit Gram matrix is 8 times identity") {
  const PauliBasis b(3);
  const auto el = b.elements();
  for (Index i = 0; i < b.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) {
      const Complex g = (el[static_cast<std::size_t>(i)] * el[static_cast<std::size_t>(j)]).trace();
      CHECK(std::abs(g - Complex(i == j ? 8.0 : 0.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("pauli basis guards the qubit count") {
  CHECK_THROWS_AS(PauliBasis(0), InvalidArgument);
  CHECK_THROWS_AS(PauliBasis(11), InvalidArgument);
  CHECK_NOTHROW(PauliBasis(10));
}

TEST_CASE("pauli vectors of simple states") {
  const PauliBasis b(1);
  RealVector expect(4);
  expect << 0.5, 0, 0, 0;
  CHECK((to_pauli_vector(maximally_mixed(2).op, b).coords - expect).norm() < 1e-15);
  expect << 0.5, 0, 0, 0.5;
  CHECK((to_pauli_vector(ket0().op, b).coords - expect).norm() < 1e-15);
}

TEST_CASE("from_pauli_vector") {
  const PauliBasis b(1);
  RealVector r(4);
  r << 0.5, 0, 0, 0;
  CHECK(from_pauli_vector({r}, b).matrix().isApprox(ComplexMatrix::Identity(2, 2) / 2.0));

  r << 0.5, 0.5, 0, 0.5;
  const RealVector ev = from_pauli_vector({r}, b).eigenvalues();
  CHECK(ev(0) == doctest::Approx((1 - std::sqrt(2.0)) / 2).epsilon(1e-14));
  CHECK(ev(1) == doctest::Approx((1 + std::sqrt(2.0)) / 2).epsilon(1e-14));

  CHECK(from_pauli_vector({RealVector::Zero(4)}, b).matrix().norm() == 0.0);
  CHECK_THROWS_AS(from_pauli_vector({RealVector::Zero(5)}, b), InvalidArgument);
}

TEST_CASE("pauli vector round trip on random Hermitian operators") {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 4; ++m) {
    const PauliBasis b(m);
    for (int t = 0; t < 5; ++t) {
      const HermitianOperator op(random_hermitian(b.dim(), rng));
      const PauliVector r = to_pauli_vector(op, b);
      CHECK((from_pauli_vector(r, b).matrix() - op.matrix()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((to_pauli_vector(from_pauli_vector(r, b), b).coords - r.coords).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("pauli coordinates agree with explicit traces") {
  std::mt19937_64 rng(5);
  const PauliBasis b(3);
  const ComplexMatrix a = random_hermitian(8, rng);
  const RealVector r = pauli_coordinates(a, b);
  for (Index i = 0; i < b.size(); ++i) {
    CHECK(r(i) == doctest::Approx((a * b.element(i)).trace().real() / 8.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pauli_coordinates(ComplexMatrix::Identity(4, 4), b), InvalidArgument);
}

TEST_CASE("hilbert-schmidt distance") {
  ComplexVector v1(2);
  v1 << 0, 1;
  const DensityMatrix one = DensityMatrix::pure(v1);
  CHECK(hs_distance(ket0().op, ket0().op) == 0.0);
  CHECK(hs_distance(ket0().op, one.op) == doctest::Approx(1.0));
  CHECK(hs_distance(ket0().op, maximally_mixed(2).op) == doctest::Approx(0.5));
  CHECK_THROWS_AS(hs_distance(ket0().op, maximally_mixed(4).op), InvalidArgument);
}

TEST_CASE("hs distance equals scaled pauli-vector distance") {
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 3; ++m) {
    const PauliBasis b(m);
    const double d = static_cast<double>(b.dim());
    for (int t = 0; t < 20; ++t) {
      const HermitianOperator a(random_hermitian(b.dim(), rng));
      const HermitianOperator c(random_hermitian(b.dim(), rng));
      const double lhs = hs_distance(a, c);
      const double rhs =
          std::sqrt(d / 2.0) * (to_pauli_vector(a, b).coords - to_pauli_vector(c, b).coords).norm();
      CHECK(std::abs(lhs - rhs) < 1e-10);
      CHECK(hs_distance(a, c) == doctest::Approx(hs_distance(c, a)));
    }
  }
}

TEST_CASE("hermitian operator validation") {
  ComplexMatrix m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(HermitianOperator{m}, InvalidArgument);
  CHECK_THROWS_AS(HermitianOperator{ComplexMatrix::Zero(2, 3)}, InvalidArgument);
  m << 1, Complex(0, 1e-13), Complex(0, 0), 1;
  CHECK_NOTHROW(HermitianOperator{m});
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix::make(ComplexMatrix::Identity(2, 2)), InvalidArgument);
  ComplexMatrix m(2, 2);
  m << 1.5, 0, 0, -0.5;
  const DensityMatrix d = DensityMatrix::make(m);
  CHECK_FALSE(d.physical);
  CHECK_THROWS_AS(DensityMatrix::make_physical(m), InvalidArgument);
  CHECK(ket0().physical);
  CHECK(ket0().purity() == doctest::Approx(1.0));
}

TEST_CASE("partial traces") {
  std::mt19937_64 rng(8);
  const ComplexMatrix a = random_hermitian(2, rng);
  const ComplexMatrix b = random_hermitian(4, rng);
  const ComplexMatrix ab = kron(a, b);
  CHECK((trace_out_second(ab, 2, 4) - a * b.trace()).norm() < 1e-12);
  CHECK((trace_out_first(ab, 2, 4) - b * a.trace()).norm() < 1e-12);
  CHECK_THROWS_AS(trace_out_second(ab, 2, 2), InvalidArgument);
}

TEST_CASE("left pseudo-inverse") {
  const RealMatrix id = RealMatrix::Identity(3, 3);
  CHECK((left_pseudo_inverse(id) - id).norm() < 1e-14);

  RealMatrix col(2, 1);
  col << 1, 1;
  const RealMatrix p = left_pseudo_inverse(col);
  CHECK(p(0, 0) == doctest::Approx(0.5));
  CHECK(p(0, 1) == doctest::Approx(0.5));

  RealMatrix deficient(3, 2);
  deficient << 1, 2, 2, 4, 3, 6;
  CHECK_THROWS_AS(left_pseudo_inverse(deficient), NotInformationallyComplete);
  CHECK_THROWS_AS(left_pseudo_inverse(RealMatrix::Ones(2, 3)), NotInformationallyComplete);
}

TEST_CASE("pseudo-inverse of the single-qubit MUB design") {
  const DesignModel model = build_design(mub_protocol(1, 100), PauliBasis(1));
  const RealMatrix& a = model.linear.design();
  REQUIRE(a.rows() == 6);
  REQUIRE(a.cols() == 4);
  CHECK((model.linear.pinv() * a - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  // agrees with the normal-equation formula on a well-conditioned design
  const RealMatrix normal = (a.transpose() * a).inverse() * a.transpose();
  CHECK((normal - model.linear.pinv()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pseudo-inverse is a left inverse on random tall matrices") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    RealMatrix a(30, 12);
    for (Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
    CHECK((left_pseudo_inverse(a) * a - RealMatrix::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(numerical_rank(a) == 12);
  }
}
