#pragma once

#include <random>

#include "tomoci/linalg.hpp"

namespace testing {

using namespace tomoci;

inline ComplexMatrix random_hermitian(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline DensityMatrix ket0() {
  ComplexVector v(2);
  v << 1, 0;
  return DensityMatrix::pure(v);
}

inline DensityMatrix maximally_mixed(Index d) {
  return DensityMatrix::make_physical(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

}  // namespace testing
