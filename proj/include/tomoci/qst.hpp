#pragma once

// Linear-inversion state tomography and gamma-approximated confidence balls.
//
// The pieces shared with process tomography live here as well: the block
// layout of a multinomial experiment, the linear model p = offset + A c with
// its left pseudo-inverse, observed frequencies, moments of the squared
// residual xi = ||A^+ (f - p)||^2 and the resulting confidence regions.

#include <cstdint>
#include <optional>
#include <vector>

#include "tomoci/gamma.hpp"
#include "tomoci/linalg.hpp"
#include "tomoci/protocols.hpp"

namespace tomoci {

// Contiguous partition of the outcome vector into independent multinomial
// blocks.
class BlockLayout {
 public:
  BlockLayout() = default;
  explicit BlockLayout(const std::vector<Index>& sizes);
  static BlockLayout of(const MeasurementProtocol& protocol);

  Index blocks() const noexcept { return static_cast<Index>(begin_.size()) - 1; }
  Index size() const noexcept { return begin_.empty() ? 0 : begin_.back(); }
  Index begin(Index b) const { return begin_[static_cast<std::size_t>(b)]; }
  Index length(Index b) const { return begin(b + 1) - begin(b); }

  bool operator==(const BlockLayout&) const = default;

 private:
  std::vector<Index> begin_{0};
};

// p = offset + design * coords, estimated by coords = pinv * (f - offset).
// The Gram kernel T = pinv^T pinv is stored when the outcome count is at
// most kMaxGramOutcomes.
class LinearModel {
 public:
  static constexpr Index kMaxGramOutcomes = 4096;

  LinearModel() = default;
  LinearModel(RealMatrix design, RealVector offset, BlockLayout layout);

  const RealMatrix& design() const noexcept { return design_; }
  const RealVector& offset() const noexcept { return offset_; }
  const RealMatrix& pinv() const noexcept { return pinv_; }
  const BlockLayout& layout() const noexcept { return layout_; }
  Index parameters() const noexcept { return design_.cols(); }
  Index outcomes() const noexcept { return design_.rows(); }

  bool has_gram() const noexcept { return gram_.has_value(); }
  const RealMatrix& gram() const { return *gram_; }

  RealVector estimate(const RealVector& f) const { return pinv_ * (f - offset_); }
  RealVector predict(const RealVector& coords) const { return offset_ + design_ * coords; }

 private:
  RealMatrix design_;
  RealVector offset_;
  RealMatrix pinv_;
  BlockLayout layout_;
  std::optional<RealMatrix> gram_;
};

class FrequencyVector {
 public:
  // Throws DegenerateData for a block with zero total count.
  static FrequencyVector from_counts(const BlockLayout& layout, std::vector<std::int64_t> counts);
  // Exact (possibly non-integral) frequencies, e.g. noiseless probabilities.
  static FrequencyVector from_frequencies(const BlockLayout& layout, RealVector f,
                                          std::vector<std::int64_t> shots);

  const BlockLayout& layout() const noexcept { return layout_; }
  const RealVector& values() const noexcept { return f_; }
  const std::vector<std::int64_t>& shots() const noexcept { return shots_; }
  const std::optional<std::vector<std::int64_t>>& counts() const noexcept { return counts_; }

 private:
  BlockLayout layout_;
  RealVector f_;
  std::vector<std::int64_t> shots_;
  std::optional<std::vector<std::int64_t>> counts_;
};

enum class MomentMode {
  // mean = tr(T S), variance = 2 tr(T S T S) with S the block-diagonal
  // multinomial covariance of the frequencies.
  Gaussian,
  // Leading-order transcription: mean = sum_i T_ii f_i / N,
  // variance = sum_{i != j, same block} T_ij^2 f_i f_j / N^2.
  LeadingOrder,
};

std::string to_string(MomentMode mode);
MomentMode moment_mode_from_string(const std::string& s);

struct MomentEstimates {
  double mean = 0.0;
  double variance = 0.0;
  MomentMode mode = MomentMode::Gaussian;

  GammaParams gamma() const { return {mean, variance}; }
};

// Moments of xi with the multinomial parameters taken to be `f`. Throws
// DegenerateData when either moment vanishes (all mass on one outcome in
// every block).
MomentEstimates moments(const LinearModel& model, const FrequencyVector& data,
                        MomentMode mode = MomentMode::Gaussian);
MomentEstimates moments(const LinearModel& model, const RealVector& f,
                        const std::vector<std::int64_t>& shots,
                        MomentMode mode = MomentMode::Gaussian);

// Gaussian-mode moments through the K x K coordinate covariance
// M = pinv S pinv^T (mean = tr M, variance = 2 ||M||_F^2). Used when the
// model carries no Gram kernel.
MomentEstimates gaussian_moments_via_coordinates(const LinearModel& model, const RealVector& f,
                                                 const std::vector<std::int64_t>& shots);

double xi_statistic(const LinearModel& model, const RealVector& f, const RealVector& p);

// Operator space of a region: states are channels with d_in = 1, so the
// Hilbert-Schmidt scaling dimension is d_in * d_out in both cases and the
// fixed Pauli coordinates are those whose output factor is the identity.
struct OperatorSpace {
  enum class Kind { State, Process };
  Kind kind = Kind::State;
  Index d_in = 1;
  Index d_out = 2;

  static OperatorSpace state(Index d) { return {Kind::State, 1, d}; }
  static OperatorSpace process(Index d_in, Index d_out) { return {Kind::Process, d_in, d_out}; }

  Index dim() const { return d_in * d_out; }
  bool is_free_coordinate(Index i) const { return i % (d_out * d_out) != 0; }
  bool operator==(const OperatorSpace&) const = default;
};

// C(delta) ~ F_{mean,var}(2 delta^2 / dim)
double confidence_level(const MomentEstimates& m, Index dim, double delta);
// Inverse of confidence_level; level must lie in [0, 1).
double confidence_radius(const MomentEstimates& m, Index dim, double level);

struct ConfidenceRegion {
  HermitianOperator center;
  OperatorSpace space;
  double radius = 0.0;
  double level = 0.0;
  MomentEstimates moments;

  bool contains(const HermitianOperator& op) const;
};

ConfidenceRegion region_at_level(HermitianOperator center, OperatorSpace space,
                                 const MomentEstimates& m, double level);
ConfidenceRegion region_at_radius(HermitianOperator center, OperatorSpace space,
                                  const MomentEstimates& m, double radius);

// ---------------------------------------------------------------------------
// State tomography

struct DesignModel {
  int qubits = 0;
  std::int64_t shots_per_block = 0;
  LinearModel linear;
};

// Row for POVM element E has entries Tr(E sigma_j), so p = A r(rho).
DesignModel build_design(const MeasurementProtocol& protocol, const PauliBasis& basis);

RealVector probabilities(const DensityMatrix& rho, const DesignModel& model);

DensityMatrix linear_inversion(const DesignModel& model, const FrequencyVector& data);

inline MomentEstimates moments(const DesignModel& model, const FrequencyVector& data,
                               MomentMode mode = MomentMode::Gaussian) {
  return moments(model.linear, data, mode);
}

inline double xi_statistic(const DesignModel& model, const RealVector& f, const RealVector& p) {
  return xi_statistic(model.linear, f, p);
}

}  // namespace tomoci
