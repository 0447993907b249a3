#include "tomoci/qpt.hpp"

#include <cmath>

namespace tomoci {

ChoiMatrix ChoiMatrix::make(const ComplexMatrix& c, Index d_in, Index d_out) {
  if (d_in < 1 || d_out < 1 || c.rows() != d_in * d_out) {
    throw InvalidArgument("ChoiMatrix: matrix dimension does not equal d_in * d_out");
  }
  ChoiMatrix out;
  out.op_ = HermitianOperator(c);
  out.d_in_ = d_in;
  out.d_out_ = d_out;
  const ComplexMatrix tr_out = trace_out_second(out.op_.matrix(), d_in, d_out);
  const double dev = (tr_out - ComplexMatrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff();
  if (dev > kChoiTol) {
    throw InvalidArgument("ChoiMatrix: Tr_out C differs from identity by " + std::to_string(dev));
  }
  out.physical_ = out.op_.min_eigenvalue() >= -kChoiTol;
  return out;
}

ChoiMatrix ChoiMatrix::make_physical(const ComplexMatrix& c, Index d_in, Index d_out) {
  ChoiMatrix out = make(c, d_in, d_out);
  if (!out.physical_) throw InvalidArgument("ChoiMatrix: matrix is not positive semidefinite");
  return out;
}

ChoiMatrix choi_of_unitary(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw InvalidArgument("choi_of_unitary: matrix is not unitary");
  const Index d = u.rows();
  // |v> = sum_i |i> (x) U|i>
  ComplexVector v(d * d);
  for (Index i = 0; i < d; ++i) v.segment(i * d, d) = u.col(i);
  return ChoiMatrix::make_physical(v * v.adjoint(), d, d);
}

ChoiMatrix identity_channel(int qubits) {
  const Index d = Index{1} << qubits;
  return choi_of_unitary(ComplexMatrix::Identity(d, d));
}

ChoiMatrix depolarizing_channel(int qubits, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("depolarizing_channel: p must lie in [0, 1], got " + std::to_string(p));
  }
  const Index d = Index{1} << qubits;
  const ComplexMatrix c = (1.0 - p) * identity_channel(qubits).matrix() +
                          (p / static_cast<double>(d)) * ComplexMatrix::Identity(d * d, d * d);
  return ChoiMatrix::make_physical(c, d, d);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const ChoiMatrix& c) {
  const Index din = c.d_in();
  const Index dout = c.d_out();
  if (rho.dim() != din) {
    throw InvalidArgument("apply_channel: state dimension " + std::to_string(rho.dim()) +
                          " does not match channel input " + std::to_string(din));
  }
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  for (Index i = 0; i < din; ++i)
    for (Index j = 0; j < din; ++j) {
      const Complex r = rho.matrix()(i, j);
      if (r == Complex(0.0, 0.0)) continue;
      out += r * c.matrix().block(i * dout, j * dout, dout, dout);
    }
  return DensityMatrix::make(out);
}

RealVector process_probabilities(const ChoiMatrix& c, const ProcessProtocol& protocol) {
  if (!c.physical()) throw InvalidArgument("process_probabilities: channel is not physical");
  const auto& readout = protocol.readout;
  RealVector p(protocol.inputs.size() * readout.total_outcomes());
  Index row = 0;
  for (const auto& rho_in : protocol.inputs.states) {
    const DensityMatrix out = apply_channel(rho_in, c);
    for (const auto& block : readout.blocks)
      for (const auto& e : block.elements) p(row++) = (e * out.matrix()).trace().real();
  }
  return p.cwiseMax(0.0).cwiseMin(1.0);
}

ProcessDesignModel build_process_design(const ProcessProtocol& protocol) {
  const auto& readout = protocol.readout;
  const int m = readout.qubits;
  if (protocol.inputs.size() == 0) throw InvalidArgument("build_process_design: no input states");
  for (const auto& s : protocol.inputs.states) {
    if (s.dim() != readout.dim()) {
      throw InvalidArgument("build_process_design: input and readout dimensions differ");
    }
  }
  const PauliBasis single(m);
  const Index n1 = single.size();  // d^2
  const double d = static_cast<double>(single.dim());

  // Tr(rho_i^T sigma_a) and Tr(E_j sigma_b)
  std::vector<RealVector> in_tr;
  for (const auto& s : protocol.inputs.states) {
    in_tr.push_back(d * pauli_coordinates(s.matrix().transpose(), single));
  }
  std::vector<RealVector> out_tr;
  for (const auto& block : readout.blocks)
    for (const auto& e : block.elements) out_tr.push_back(d * pauli_coordinates(e, single));

  ProcessDesignModel model;
  model.qubits = m;
  model.inputs = protocol.inputs.size();
  model.readout_blocks = static_cast<Index>(readout.blocks.size());
  model.shots_per_configuration = protocol.shots_per_configuration();
  for (Index a = 0; a < n1; ++a)
    for (Index b = 1; b < n1; ++b) model.free_index.push_back(a * n1 + b);

  const Index rows = protocol.inputs.size() * readout.total_outcomes();
  RealMatrix design(rows, static_cast<Index>(model.free_index.size()));
  RealVector offset(rows);
  std::vector<Index> sizes;
  Index row = 0;
  for (const auto& it : in_tr) {
    std::size_t e = 0;
    for (const auto& block : readout.blocks) {
      sizes.push_back(block.size());
      for (Index o = 0; o < block.size(); ++o, ++e, ++row) {
        const RealVector& ot = out_tr[e];
        Index col = 0;
        for (Index a = 0; a < n1; ++a)
          for (Index b = 1; b < n1; ++b) design(row, col++) = it(a) * ot(b);
        // c_00 = 1 / d_out with Tr(rho^T) = 1
        offset(row) = it(0) * ot(0) / d;
      }
    }
  }
  model.linear = LinearModel(std::move(design), std::move(offset), BlockLayout(sizes));
  return model;
}

RealVector full_choi_coordinates(const ProcessDesignModel& model, const RealVector& free_coords) {
  if (free_coords.size() != static_cast<Index>(model.free_index.size())) {
    throw InvalidArgument("full_choi_coordinates: wrong number of free coordinates");
  }
  const Index n1 = model.d_out() * model.d_out();
  RealVector c = RealVector::Zero(n1 * n1);
  c(0) = 1.0 / static_cast<double>(model.d_out());
  for (std::size_t k = 0; k < model.free_index.size(); ++k) {
    c(model.free_index[k]) = free_coords(static_cast<Index>(k));
  }
  return c;
}

ChoiMatrix process_linear_inversion(const ProcessDesignModel& model, const FrequencyVector& data) {
  if (!(data.layout() == model.linear.layout())) {
    throw InvalidArgument("process_linear_inversion: data configurations do not match the design");
  }
  const PauliBasis joint(2 * model.qubits);
  const RealVector c = full_choi_coordinates(model, model.linear.estimate(data.values()));
  return ChoiMatrix::make(operator_from_coordinates(c, joint), model.d_in(), model.d_out());
}

ConfidenceRegion process_region_at_level(const ChoiMatrix& estimate, const MomentEstimates& m,
                                         double level) {
  return region_at_level(estimate.op(), estimate.space(), m, level);
}

ConfidenceRegion process_region_at_radius(const ChoiMatrix& estimate, const MomentEstimates& m,
                                          double radius) {
  return region_at_radius(estimate.op(), estimate.space(), m, radius);
}

}  // namespace tomoci
