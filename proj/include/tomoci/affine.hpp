#pragma once

// Confidence intervals for affine functionals phi(X) = r(X) . phi + phi0 over
// a Hilbert-Schmidt confidence ball.
//
// The ball ||r - r_center|| <= sqrt(2/n) delta (n = dim of the operator
// space) is intersected with the affine subspace of fixed coordinates (the
// trace for states, the Tr_out block for Choi matrices). A linear objective
// over that set is extremal at center +- radius * P phi / ||P phi||, where P
// zeroes the fixed coordinates, so the interval is available in closed form.

#include <string>
#include <utility>

#include "tomoci/qpt.hpp"
#include "tomoci/qst.hpp"

namespace tomoci {

struct AffineFunctional {
  RealVector phi;
  double phi0 = 0.0;
  std::string label;
  OperatorSpace space;
  bool is_fidelity = false;
};

// Tr(rho |psi><psi|). Throws Unsupported unless the target is pure.
AffineFunctional fidelity_functional(const DensityMatrix& target);
// Tr(C_target C) / d_in^2. Throws Unsupported unless the target Choi matrix
// is rank one (a unitary channel).
AffineFunctional fidelity_functional(const ChoiMatrix& target);
// Tr(rho O) on states. Throws InvalidArgument for non-Hermitian O.
AffineFunctional observable_functional(const ComplexMatrix& o);

double evaluate(const AffineFunctional& fn, const HermitianOperator& x);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.0;
  bool clamped = false;
};

// Closed-form extremes of fn over the region. With `clamp`, fidelity
// intervals are intersected with [0, 1]; other functionals are left as is.
Interval affine_interval(const AffineFunctional& fn, const ConfidenceRegion& region,
                         bool clamp = false);

// Points of the ball where fn attains lo and hi (before clamping).
std::pair<ComplexMatrix, ComplexMatrix> affine_extremizers(const AffineFunctional& fn,
                                                           const ConfidenceRegion& region);

// Gradient with the fixed coordinates zeroed.
RealVector free_gradient(const AffineFunctional& fn);

}  // namespace tomoci
