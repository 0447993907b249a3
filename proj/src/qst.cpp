#include "tomoci/qst.hpp"

#include <cmath>
#include <numeric>

namespace tomoci {
namespace {

void check_layout(const LinearModel& model, const RealVector& f,
                  const std::vector<std::int64_t>& shots) {
  const BlockLayout& layout = model.layout();
  if (f.size() != layout.size()) {
    throw InvalidArgument("frequency vector has " + std::to_string(f.size()) +
                          " entries, model expects " + std::to_string(layout.size()));
  }
  if (static_cast<Index>(shots.size()) != layout.blocks()) {
    throw InvalidArgument("shot list has " + std::to_string(shots.size()) + " blocks, model has " +
                          std::to_string(layout.blocks()));
  }
}

// Every block carries all of its mass on one outcome: xi is identically zero.
void check_not_concentrated(const BlockLayout& layout, const RealVector& f) {
  for (Index b = 0; b < layout.blocks(); ++b) {
    const auto seg = f.segment(layout.begin(b), layout.length(b));
    if (seg.sum() <= 0.0) {
      throw DegenerateData("block " + std::to_string(b) + " has no observations");
    }
    if ((seg.array() > 0.0).count() > 1) return;
  }
  throw DegenerateData("every block is concentrated on a single outcome; xi has zero moments");
}

RealVector per_outcome_weights(const BlockLayout& layout, const RealVector& f,
                               const std::vector<std::int64_t>& shots) {
  RealVector w(f.size());
  for (Index b = 0; b < layout.blocks(); ++b) {
    const double n = static_cast<double>(shots[static_cast<std::size_t>(b)]);
    if (!(n > 0)) throw DegenerateData("block " + std::to_string(b) + " has zero shots");
    w.segment(layout.begin(b), layout.length(b)) = f.segment(layout.begin(b), layout.length(b)) / n;
  }
  return w;
}

MomentEstimates finish(double mean, double variance, MomentMode mode) {
  if (!(mean > 0.0) || !(variance > 0.0) || !std::isfinite(mean) || !std::isfinite(variance)) {
    throw DegenerateData("moments of xi are not positive (mean=" + std::to_string(mean) +
                         ", variance=" + std::to_string(variance) + ")");
  }
  return {mean, variance, mode};
}

MomentEstimates gaussian_moments_via_gram(const LinearModel& model, const RealVector& f,
                                          const std::vector<std::int64_t>& shots) {
  // S = D - U U^T, D = diag(f_i / N_b), column b of U is f_b / sqrt(N_b).
  const BlockLayout& layout = model.layout();
  const RealMatrix& t = model.gram();
  const Index p = layout.size();
  const Index nb = layout.blocks();
  const RealVector dw = per_outcome_weights(layout, f, shots);

  // W = T U, exploiting the block sparsity of U.
  RealMatrix w(p, nb);
  for (Index b = 0; b < nb; ++b) {
    const double s = 1.0 / std::sqrt(static_cast<double>(shots[static_cast<std::size_t>(b)]));
    w.col(b) = t.middleCols(layout.begin(b), layout.length(b)) *
               (s * f.segment(layout.begin(b), layout.length(b)));
  }
  RealMatrix utw(nb, nb);
  for (Index b = 0; b < nb; ++b) {
    const double s = 1.0 / std::sqrt(static_cast<double>(shots[static_cast<std::size_t>(b)]));
    utw.row(b) = s * f.segment(layout.begin(b), layout.length(b)).transpose() *
                 w.middleRows(layout.begin(b), layout.length(b));
  }

  double mean = t.diagonal().dot(dw) - utw.trace();

  // sum_ij T_ij^2 D_i D_j
  double tdtd = 0.0;
  for (Index j = 0; j < p; ++j) {
    if (dw(j) == 0.0) continue;
    tdtd += dw(j) * t.col(j).cwiseAbs2().dot(dw);
  }
  const double cross = dw.transpose() * w.cwiseAbs2().rowwise().sum();
  const double tr_tsts = tdtd - 2.0 * cross + utw.squaredNorm();
  return finish(mean, 2.0 * tr_tsts, MomentMode::Gaussian);
}

MomentEstimates leading_order_moments(const LinearModel& model, const RealVector& f,
                              const std::vector<std::int64_t>& shots) {
  const BlockLayout& layout = model.layout();
  const RealMatrix& pinv = model.pinv();
  double mean = 0.0;
  double variance = 0.0;
  for (Index b = 0; b < layout.blocks(); ++b) {
    const double n = static_cast<double>(shots[static_cast<std::size_t>(b)]);
    const Index off = layout.begin(b);
    const Index len = layout.length(b);
    const RealMatrix tb = pinv.middleCols(off, len).transpose() * pinv.middleCols(off, len);
    const RealVector fb = f.segment(off, len);
    mean += tb.diagonal().dot(fb) / n;
    double v = 0.0;
    for (Index i = 0; i < len; ++i)
      for (Index j = 0; j < len; ++j)
        if (i != j) v += tb(i, j) * tb(i, j) * fb(i) * fb(j);
    variance += v / (n * n);
  }
  return finish(mean, variance, MomentMode::LeadingOrder);
}

}  // namespace

// ---------------------------------------------------------------------------

BlockLayout::BlockLayout(const std::vector<Index>& sizes) {
  for (Index s : sizes) {
    if (s < 1) throw InvalidArgument("BlockLayout: empty block");
    begin_.push_back(begin_.back() + s);
  }
}

BlockLayout BlockLayout::of(const MeasurementProtocol& protocol) {
  std::vector<Index> sizes;
  for (const auto& b : protocol.blocks) sizes.push_back(b.size());
  return BlockLayout(sizes);
}

LinearModel::LinearModel(RealMatrix design, RealVector offset, BlockLayout layout)
    : design_(std::move(design)), offset_(std::move(offset)), layout_(std::move(layout)) {
  if (design_.rows() != layout_.size() || offset_.size() != design_.rows()) {
    throw InvalidArgument("LinearModel: design, offset and layout sizes disagree");
  }
  pinv_ = left_pseudo_inverse(design_);
  if (design_.rows() <= kMaxGramOutcomes) gram_ = pinv_.transpose() * pinv_;
}

FrequencyVector FrequencyVector::from_counts(const BlockLayout& layout,
                                             std::vector<std::int64_t> counts) {
  if (static_cast<Index>(counts.size()) != layout.size()) {
    throw InvalidArgument("counts vector has " + std::to_string(counts.size()) +
                          " entries, layout expects " + std::to_string(layout.size()));
  }
  FrequencyVector out;
  out.layout_ = layout;
  out.f_.resize(layout.size());
  for (Index b = 0; b < layout.blocks(); ++b) {
    std::int64_t total = 0;
    for (Index i = layout.begin(b); i < layout.begin(b + 1); ++i) {
      const auto c = counts[static_cast<std::size_t>(i)];
      if (c < 0) throw InvalidArgument("negative count in block " + std::to_string(b));
      total += c;
    }
    if (total == 0) throw DegenerateData("block " + std::to_string(b) + " has no observations");
    for (Index i = layout.begin(b); i < layout.begin(b + 1); ++i) {
      out.f_(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / static_cast<double>(total);
    }
    out.shots_.push_back(total);
  }
  out.counts_ = std::move(counts);
  return out;
}

FrequencyVector FrequencyVector::from_frequencies(const BlockLayout& layout, RealVector f,
                                                  std::vector<std::int64_t> shots) {
  if (f.size() != layout.size() || static_cast<Index>(shots.size()) != layout.blocks()) {
    throw InvalidArgument("FrequencyVector: sizes do not match the block layout");
  }
  for (Index b = 0; b < layout.blocks(); ++b) {
    const auto seg = f.segment(layout.begin(b), layout.length(b));
    if ((seg.array() < 0.0).any() || (seg.array() > 1.0).any()) {
      throw InvalidArgument("FrequencyVector: entries of block " + std::to_string(b) +
                            " outside [0, 1]");
    }
    if (std::abs(seg.sum() - 1.0) > 1e-12 * static_cast<double>(seg.size())) {
      throw InvalidArgument("FrequencyVector: block " + std::to_string(b) + " does not sum to 1");
    }
    if (shots[static_cast<std::size_t>(b)] < 1) {
      throw InvalidArgument("FrequencyVector: block " + std::to_string(b) + " has no shots");
    }
  }
  FrequencyVector out;
  out.layout_ = layout;
  out.f_ = std::move(f);
  out.shots_ = std::move(shots);
  return out;
}

std::string to_string(MomentMode mode) { return mode == MomentMode::Gaussian ? "gaussian" : "leading-order"; }

MomentMode moment_mode_from_string(const std::string& s) {
  if (s == "gaussian") return MomentMode::Gaussian;
  if (s == "leading-order") return MomentMode::LeadingOrder;
  throw InvalidArgument("unknown moment mode '" + s + "' (expected gaussian or leading-order)");
}

MomentEstimates moments(const LinearModel& model, const FrequencyVector& data, MomentMode mode) {
  if (!(data.layout() == model.layout())) {
    throw InvalidArgument("moments: data block structure does not match the model");
  }
  return moments(model, data.values(), data.shots(), mode);
}

MomentEstimates moments(const LinearModel& model, const RealVector& f,
                        const std::vector<std::int64_t>& shots, MomentMode mode) {
  check_layout(model, f, shots);
  check_not_concentrated(model.layout(), f);
  if (mode == MomentMode::LeadingOrder) return leading_order_moments(model, f, shots);
  if (model.has_gram()) return gaussian_moments_via_gram(model, f, shots);
  return gaussian_moments_via_coordinates(model, f, shots);
}

MomentEstimates gaussian_moments_via_coordinates(const LinearModel& model, const RealVector& f,
                                                 const std::vector<std::int64_t>& shots) {
  check_layout(model, f, shots);
  const BlockLayout& layout = model.layout();
  const RealMatrix& pinv = model.pinv();
  const RealVector dw = per_outcome_weights(layout, f, shots);

  RealMatrix scaled = pinv * dw.cwiseSqrt().asDiagonal();
  RealMatrix m = scaled * scaled.transpose();
  for (Index b = 0; b < layout.blocks(); ++b) {
    const double s = 1.0 / std::sqrt(static_cast<double>(shots[static_cast<std::size_t>(b)]));
    const RealVector a = pinv.middleCols(layout.begin(b), layout.length(b)) *
                         (s * f.segment(layout.begin(b), layout.length(b)));
    m.noalias() -= a * a.transpose();
  }
  return finish(m.trace(), 2.0 * m.squaredNorm(), MomentMode::Gaussian);
}

double xi_statistic(const LinearModel& model, const RealVector& f, const RealVector& p) {
  if (f.size() != model.outcomes() || p.size() != model.outcomes()) {
    throw InvalidArgument("xi_statistic: vectors must have " + std::to_string(model.outcomes()) +
                          " entries");
  }
  return (model.pinv() * (f - p)).squaredNorm();
}

double confidence_level(const MomentEstimates& m, Index dim, double delta) {
  if (!(delta >= 0.0)) throw InvalidArgument("confidence_level: radius must be nonnegative");
  if (dim < 1) throw InvalidArgument("confidence_level: dimension must be positive");
  return gamma_cdf(m.gamma(), 2.0 * delta * delta / static_cast<double>(dim));
}

double confidence_radius(const MomentEstimates& m, Index dim, double level) {
  if (!(level >= 0.0) || !(level < 1.0)) {
    throw InvalidArgument("confidence_radius: level must lie in [0, 1), got " + std::to_string(level));
  }
  if (dim < 1) throw InvalidArgument("confidence_radius: dimension must be positive");
  const double x = gamma_cdf_inverse(m.gamma(), level);
  return std::sqrt(static_cast<double>(dim) * x / 2.0);
}

bool ConfidenceRegion::contains(const HermitianOperator& op) const {
  return hs_distance(center, op) < radius;
}

ConfidenceRegion region_at_level(HermitianOperator center, OperatorSpace space,
                                 const MomentEstimates& m, double level) {
  if (center.dim() != space.dim()) throw InvalidArgument("region: center does not match space");
  const double r = confidence_radius(m, space.dim(), level);
  return {std::move(center), space, r, level, m};
}

ConfidenceRegion region_at_radius(HermitianOperator center, OperatorSpace space,
                                  const MomentEstimates& m, double radius) {
  if (center.dim() != space.dim()) throw InvalidArgument("region: center does not match space");
  const double level = confidence_level(m, space.dim(), radius);
  return {std::move(center), space, radius, level, m};
}

// ---------------------------------------------------------------------------

DesignModel build_design(const MeasurementProtocol& protocol, const PauliBasis& basis) {
  if (basis.qubits() != protocol.qubits) {
    throw InvalidArgument("build_design: basis has " + std::to_string(basis.qubits()) +
                          " qubits, protocol " + std::to_string(protocol.qubits));
  }
  const Index rows = protocol.total_outcomes();
  const double d = static_cast<double>(basis.dim());
  RealMatrix a(rows, basis.size());
  Index row = 0;
  for (const auto& block : protocol.blocks) {
    for (const auto& e : block.elements) {
      // Tr(E sigma_j) = d * coordinate_j(E)
      a.row(row++) = d * pauli_coordinates(e, basis).transpose();
    }
  }
  LinearModel linear(std::move(a), RealVector::Zero(rows), BlockLayout::of(protocol));
  return {protocol.qubits, protocol.shots_per_block, std::move(linear)};
}

RealVector probabilities(const DensityMatrix& rho, const DesignModel& model) {
  if (!rho.physical) throw InvalidArgument("probabilities: state is not physical");
  const PauliBasis basis(model.qubits);
  RealVector p = model.linear.predict(pauli_coordinates(rho.matrix(), basis));
  // Round-off can leave entries a hair outside [0, 1].
  return p.cwiseMax(0.0).cwiseMin(1.0);
}

DensityMatrix linear_inversion(const DesignModel& model, const FrequencyVector& data) {
  if (!(data.layout() == model.linear.layout())) {
    throw InvalidArgument("linear_inversion: data block structure does not match the design");
  }
  const PauliBasis basis(model.qubits);
  return DensityMatrix::make(operator_from_coordinates(model.linear.estimate(data.values()), basis));
}

}  // namespace tomoci
