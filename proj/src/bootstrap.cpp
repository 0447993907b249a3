#include "tomoci/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace tomoci {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw InvalidArgument("empirical distribution needs at least 2 samples");
  for (double x : samples_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidArgument("empirical distribution samples must be finite and nonnegative");
    }
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::mean() const {
  double s = 0.0;
  for (double x : samples_) s += x;
  return s / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::variance() const {
  const double m = mean();
  double s = 0.0;
  for (double x : samples_) s += (x - m) * (x - m);
  return s / static_cast<double>(samples_.size() - 1);
}

EmpiricalDistribution bootstrap_xi(const LinearModel& model, const RealVector& p,
                                   const std::vector<std::int64_t>& shots,
                                   const BootstrapConfig& cfg) {
  if (cfg.samples < 2) throw InvalidArgument("bootstrap needs at least 2 samples");
  const BlockLayout& layout = model.layout();
  if (p.size() != layout.size() || static_cast<Index>(shots.size()) != layout.blocks()) {
    throw InvalidArgument("bootstrap_xi: parameters do not match the model layout");
  }
  for (auto n : shots)
    if (n < 1) throw DegenerateData("bootstrap_xi: block with no shots");
  // validates p once, so workers cannot throw
  sample_multinomial(layout, p, shots, RngSeed{cfg.seed}.derive(0));

  const RngSeed root{cfg.seed};
  const auto total = static_cast<std::size_t>(cfg.samples);
  std::vector<double> xi(total);

  auto work = [&](std::size_t lo, std::size_t hi) {
    RealVector f(layout.size());
    for (std::size_t s = lo; s < hi; ++s) {
      const auto counts = sample_multinomial(layout, p, shots, root.derive(s));
      for (Index b = 0; b < layout.blocks(); ++b) {
        const double n = static_cast<double>(shots[static_cast<std::size_t>(b)]);
        for (Index i = layout.begin(b); i < layout.begin(b + 1); ++i) {
          f(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / n;
        }
      }
      xi[s] = (model.pinv() * (f - p)).squaredNorm();
    }
  };

  unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : cfg.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(total, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return EmpiricalDistribution(std::move(xi));
}

EmpiricalDistribution bootstrap_xi(const LinearModel& model, const FrequencyVector& data,
                                   const BootstrapConfig& cfg) {
  if (!(data.layout() == model.layout())) {
    throw InvalidArgument("bootstrap_xi: data layout does not match the model");
  }
  return bootstrap_xi(model, data.values(), data.shots(), cfg);
}

double empirical_cdf(const EmpiricalDistribution& dist, double x) {
  const auto& s = dist.samples();
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
}

double empirical_quantile(const EmpiricalDistribution& dist, double level) {
  if (!(level >= 0.0 && level < 1.0)) {
    throw InvalidArgument("empirical_quantile: level must lie in [0, 1)");
  }
  const auto& s = dist.samples();
  const auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(s.size())));
  return s[rank == 0 ? 0 : rank - 1];
}

double mc_confidence_radius(const EmpiricalDistribution& dist, Index dim, double level) {
  return std::sqrt(static_cast<double>(dim) * empirical_quantile(dist, level) / 2.0);
}

}  // namespace tomoci
