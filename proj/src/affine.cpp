#include "tomoci/affine.hpp"

#include <algorithm>
#include <cmath>

namespace tomoci {
namespace {

int qubits_for(Index dim) {
  int m = 0;
  while ((Index{1} << m) < dim) ++m;
  if ((Index{1} << m) != dim) {
    throw InvalidArgument("operator dimension " + std::to_string(dim) + " is not a power of two");
  }
  return m;
}

void check_space(const AffineFunctional& fn, const ConfidenceRegion& region) {
  if (!(fn.space == region.space)) {
    throw InvalidArgument("affine functional '" + fn.label +
                          "' is defined on a different operator space than the region");
  }
  if (fn.phi.size() != region.space.dim() * region.space.dim()) {
    throw InvalidArgument("affine functional gradient has the wrong length");
  }
}

double ball_radius(const ConfidenceRegion& region) {
  return std::sqrt(2.0 / static_cast<double>(region.space.dim())) * region.radius;
}

}  // namespace

AffineFunctional fidelity_functional(const DensityMatrix& target) {
  if (!target.physical || std::abs(target.purity() - 1.0) > 1e-10) {
    throw Unsupported("fidelity is affine only for pure target states");
  }
  const PauliBasis basis(qubits_for(target.dim()));
  AffineFunctional fn;
  fn.phi = static_cast<double>(target.dim()) * pauli_coordinates(target.matrix(), basis);
  fn.label = "fidelity";
  fn.space = OperatorSpace::state(target.dim());
  fn.is_fidelity = true;
  return fn;
}

AffineFunctional fidelity_functional(const ChoiMatrix& target) {
  const double din = static_cast<double>(target.d_in());
  const double purity = (target.matrix() * target.matrix()).trace().real() / (din * din);
  if (!target.physical() || std::abs(purity - 1.0) > 1e-10) {
    throw Unsupported("process fidelity is affine only for unitary target channels");
  }
  const Index n = target.d_in() * target.d_out();
  const PauliBasis basis(qubits_for(n));
  AffineFunctional fn;
  // Tr(C_t C) / d_in^2 with Tr(C_t sigma_i) = n * coord_i
  fn.phi = static_cast<double>(n) / (din * din) * pauli_coordinates(target.matrix(), basis);
  fn.label = "process_fidelity";
  fn.space = target.space();
  fn.is_fidelity = true;
  return fn;
}

AffineFunctional observable_functional(const ComplexMatrix& o) {
  const HermitianOperator op(o);
  const PauliBasis basis(qubits_for(op.dim()));
  AffineFunctional fn;
  fn.phi = static_cast<double>(op.dim()) * pauli_coordinates(op.matrix(), basis);
  fn.label = "observable";
  fn.space = OperatorSpace::state(op.dim());
  return fn;
}

double evaluate(const AffineFunctional& fn, const HermitianOperator& x) {
  if (x.dim() * x.dim() != fn.phi.size()) {
    throw InvalidArgument("evaluate: operator dimension does not match the functional");
  }
  const PauliBasis basis(qubits_for(x.dim()));
  return pauli_coordinates(x.matrix(), basis).dot(fn.phi) + fn.phi0;
}

RealVector free_gradient(const AffineFunctional& fn) {
  RealVector g = fn.phi;
  for (Index i = 0; i < g.size(); ++i)
    if (!fn.space.is_free_coordinate(i)) g(i) = 0.0;
  return g;
}

Interval affine_interval(const AffineFunctional& fn, const ConfidenceRegion& region, bool clamp) {
  check_space(fn, region);
  const double center = evaluate(fn, region.center);
  const double half = ball_radius(region) * free_gradient(fn).norm();
  Interval out{center - half, center + half, region.level, false};
  if (clamp && fn.is_fidelity) {
    out.lo = std::clamp(out.lo, 0.0, 1.0);
    out.hi = std::clamp(out.hi, 0.0, 1.0);
    out.clamped = true;
  }
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> affine_extremizers(const AffineFunctional& fn,
                                                           const ConfidenceRegion& region) {
  check_space(fn, region);
  const PauliBasis basis(qubits_for(region.space.dim()));
  const RealVector c = pauli_coordinates(region.center.matrix(), basis);
  const RealVector g = free_gradient(fn);
  const double gn = g.norm();
  if (gn == 0.0) return {region.center.matrix(), region.center.matrix()};
  const RealVector step = (ball_radius(region) / gn) * g;
  return {operator_from_coordinates(c - step, basis), operator_from_coordinates(c + step, basis)};
}

}  // namespace tomoci
