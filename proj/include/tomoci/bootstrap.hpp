#pragma once

// Monte-Carlo reference distribution of xi.
//
// Each resample draws block-multinomial counts with parameters p, inverts
// them and records xi = ||pinv (f* - p)||^2. With p set to the observed
// frequencies this is the parametric bootstrap; with p set to the true
// probabilities it samples the exact finite-N distribution of xi.

#include <cstdint>
#include <vector>

#include "tomoci/qpt.hpp"
#include "tomoci/qst.hpp"
#include "tomoci/rng.hpp"

namespace tomoci {

struct BootstrapConfig {
  std::int64_t samples = 1000;
  std::uint64_t seed = 0;
  // 0 selects std::thread::hardware_concurrency(). Output does not depend on
  // this value.
  unsigned workers = 1;
};

class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  // Sorts the samples. Throws InvalidArgument on negative or non-finite
  // entries or fewer than two samples.
  explicit EmpiricalDistribution(std::vector<double> samples);

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(samples_.size()); }
  double mean() const;
  // Unbiased sample variance.
  double variance() const;

 private:
  std::vector<double> samples_;
};

EmpiricalDistribution bootstrap_xi(const LinearModel& model, const RealVector& p,
                                   const std::vector<std::int64_t>& shots,
                                   const BootstrapConfig& cfg);
EmpiricalDistribution bootstrap_xi(const LinearModel& model, const FrequencyVector& data,
                                   const BootstrapConfig& cfg);

inline EmpiricalDistribution bootstrap_xi(const DesignModel& model, const FrequencyVector& data,
                                          const BootstrapConfig& cfg) {
  return bootstrap_xi(model.linear, data, cfg);
}
inline EmpiricalDistribution bootstrap_xi(const ProcessDesignModel& model,
                                          const FrequencyVector& data, const BootstrapConfig& cfg) {
  return bootstrap_xi(model.linear, data, cfg);
}

// Fraction of samples <= x.
double empirical_cdf(const EmpiricalDistribution& dist, double x);
// Nearest rank: the ceil(level * S)-th order statistic, the smallest sample
// for level 0. level must lie in [0, 1).
double empirical_quantile(const EmpiricalDistribution& dist, double level);
// delta = sqrt(dim * q / 2) with q the empirical quantile of xi.
double mc_confidence_radius(const EmpiricalDistribution& dist, Index dim, double level);

}  // namespace tomoci
