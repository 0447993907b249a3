#pragma once

// Choi-matrix process tomography.
//
// C = sum_ij |i><j| (x) Phi(|i><j|), input factor first. In the Pauli basis of
// the joint (input, output) space, trace preservation Tr_out C = 1_in fixes
// every coordinate whose output factor is the identity (c_00 = 1/d_out, the
// rest zero). Only the remaining d_in^2 (d_out^2 - 1) coordinates are
// estimated; the fixed ones contribute a constant offset to the outcome
// probabilities.

#include <vector>

#include "tomoci/qst.hpp"

namespace tomoci {

inline constexpr double kChoiTol = 1e-8;

class ChoiMatrix {
 public:
  // Throws InvalidArgument unless c is Hermitian with Tr_out c = 1_in
  // (kChoiTol entrywise). `physical` records positivity (>= -kChoiTol).
  static ChoiMatrix make(const ComplexMatrix& c, Index d_in, Index d_out);
  // Additionally rejects non-positive matrices.
  static ChoiMatrix make_physical(const ComplexMatrix& c, Index d_in, Index d_out);

  const HermitianOperator& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  Index d_in() const noexcept { return d_in_; }
  Index d_out() const noexcept { return d_out_; }
  bool physical() const noexcept { return physical_; }
  OperatorSpace space() const { return OperatorSpace::process(d_in_, d_out_); }

 private:
  HermitianOperator op_;
  Index d_in_ = 0;
  Index d_out_ = 0;
  bool physical_ = false;
};

ChoiMatrix choi_of_unitary(const ComplexMatrix& u);
ChoiMatrix identity_channel(int qubits);
// Phi(rho) = (1 - p) rho + p Tr(rho) 1 / 2^m
ChoiMatrix depolarizing_channel(int qubits, double p);

// Phi(rho) = Tr_in((rho^T (x) 1_out) C)
DensityMatrix apply_channel(const DensityMatrix& rho, const ChoiMatrix& c);

// Stacked in configuration order: input-major, then readout block, then
// outcome within the block.
RealVector process_probabilities(const ChoiMatrix& c, const ProcessProtocol& protocol);

struct ProcessDesignModel {
  int qubits = 0;  // same qubit count on input and output
  Index inputs = 0;
  Index readout_blocks = 0;
  std::int64_t shots_per_configuration = 0;
  // Joint Pauli index of each estimated coordinate, ascending.
  std::vector<Index> free_index;
  LinearModel linear;

  Index d_in() const { return Index{1} << qubits; }
  Index d_out() const { return Index{1} << qubits; }
  // Block (configuration) index of (input, readout block).
  Index configuration(Index input, Index block) const { return input * readout_blocks + block; }
};

ProcessDesignModel build_process_design(const ProcessProtocol& protocol);

// Full joint Pauli vector from the estimated coordinates.
RealVector full_choi_coordinates(const ProcessDesignModel& model, const RealVector& free_coords);

ChoiMatrix process_linear_inversion(const ProcessDesignModel& model, const FrequencyVector& data);

inline MomentEstimates process_moments(const ProcessDesignModel& model, const FrequencyVector& data,
                                       MomentMode mode = MomentMode::Gaussian) {
  return moments(model.linear, data, mode);
}

ConfidenceRegion process_region_at_level(const ChoiMatrix& estimate, const MomentEstimates& m,
                                         double level);
ConfidenceRegion process_region_at_radius(const ChoiMatrix& estimate, const MomentEstimates& m,
                                          double radius);

struct ProcessTomographyResult {
  ChoiMatrix estimate;
  ConfidenceRegion region;
};

}  // namespace tomoci
