#include "tomoci/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace tomoci {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_qubits(int qubits, int max, const char* what) {
  if (qubits < 1 || qubits > max) {
    throw InvalidArgument(std::string(what) + ": qubits must lie in [1, " + std::to_string(max) +
                          "], got " + std::to_string(qubits));
  }
}

void check_distribution(const BlockLayout& layout, const RealVector& p) {
  if (p.size() != layout.size()) {
    throw InvalidArgument("probability vector length does not match the block layout");
  }
  for (Index b = 0; b < layout.blocks(); ++b) {
    double sum = 0.0;
    for (Index i = layout.begin(b); i < layout.begin(b + 1); ++i) {
      if (!(p(i) >= -1e-12) || !std::isfinite(p(i))) {
        throw InvalidArgument("block " + std::to_string(b) + " has an invalid probability");
      }
      sum += p(i);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidArgument("block " + std::to_string(b) + " probabilities sum to " +
                            std::to_string(sum));
    }
  }
}

// Runs body(i) for i in [0, n) on `workers` threads in contiguous chunks.
template <class F>
void parallel_for(std::size_t n, unsigned workers, F body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// Sampling primitives

void sample_block(const double* p, Index outcomes, std::int64_t shots, std::mt19937_64& rng,
                  std::int64_t* counts) {
  std::int64_t left = shots;
  double mass = 1.0;
  for (Index k = 0; k + 1 < outcomes; ++k) {
    std::int64_t c = 0;
    if (left > 0 && mass > 0.0) {
      const double q = std::clamp(std::max(p[k], 0.0) / mass, 0.0, 1.0);
      if (q >= 1.0) {
        c = left;
      } else if (q > 0.0) {
        c = std::binomial_distribution<std::int64_t>(left, q)(rng);
      }
    }
    counts[k] = c;
    left -= c;
    mass -= std::max(p[k], 0.0);
  }
  counts[outcomes - 1] = left;
}

std::vector<std::int64_t> sample_multinomial(const BlockLayout& layout, const RealVector& p,
                                             const std::vector<std::int64_t>& shots,
                                             RngSeed seed) {
  check_distribution(layout, p);
  if (static_cast<Index>(shots.size()) != layout.blocks()) {
    throw InvalidArgument("one shot count per block is required");
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(layout.size()));
  for (Index b = 0; b < layout.blocks(); ++b) {
    const auto n = shots[static_cast<std::size_t>(b)];
    if (n < 1) throw InvalidArgument("shot count must be positive");
    auto rng = seed.derive(static_cast<std::uint64_t>(b)).engine();
    sample_block(p.data() + layout.begin(b), layout.length(b), n, rng,
                 counts.data() + layout.begin(b));
  }
  return counts;
}

ComplexMatrix complex_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      g(i, j) = Complex(re, normal(rng));
    }
  return g;
}

FrequencyVector sample_counts(const BlockLayout& layout, const RealVector& p,
                              const std::vector<std::int64_t>& shots, RngSeed seed) {
  return FrequencyVector::from_counts(layout, sample_multinomial(layout, p, shots, seed));
}

FrequencyVector sample_counts(const BlockLayout& layout, const RealVector& p, std::int64_t shots,
                              RngSeed seed) {
  return sample_counts(layout, p,
                       std::vector<std::int64_t>(static_cast<std::size_t>(layout.blocks()), shots),
                       seed);
}

// ---------------------------------------------------------------------------
// Random ensembles

DensityMatrix random_pure_state(int qubits, RngSeed seed) {
  check_qubits(qubits, kMaxStateQubits, "random_pure_state");
  auto rng = seed.engine();
  const Index d = Index{1} << qubits;
  const ComplexVector psi = complex_gaussian(d, 1, rng).col(0);
  return DensityMatrix::pure(psi.normalized());
}

DensityMatrix random_mixed_state(int qubits, RngSeed seed) {
  check_qubits(qubits, kMaxStateQubits, "random_mixed_state");
  auto rng = seed.engine();
  const Index d = Index{1} << qubits;
  const ComplexMatrix g = complex_gaussian(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::make_physical(rho);
}

ComplexMatrix random_unitary(int qubits, RngSeed seed) {
  check_qubits(qubits, kMaxStateQubits, "random_unitary");
  auto rng = seed.engine();
  const Index d = Index{1} << qubits;
  const Eigen::HouseholderQR<ComplexMatrix> qr(complex_gaussian(d, d, rng));
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

ChoiMatrix channel_from_dilation(const ComplexMatrix& u, int qubits) {
  check_qubits(qubits, kMaxProcessQubits, "channel_from_dilation");
  const Index d = Index{1} << qubits;
  if (u.rows() != 2 * d || !is_unitary(u)) {
    throw InvalidArgument("channel_from_dilation: expected a unitary on system plus one ancilla");
  }
  // Kraus operator k: K_k(a, i) = <a, k| U |i, 0>
  ComplexMatrix c = ComplexMatrix::Zero(d * d, d * d);
  for (Index k = 0; k < 2; ++k) {
    ComplexVector v(d * d);
    for (Index i = 0; i < d; ++i)
      for (Index a = 0; a < d; ++a) v(i * d + a) = u(2 * a + k, 2 * i);
    c += v * v.adjoint();
  }
  return ChoiMatrix::make_physical(c, d, d);
}

ChoiMatrix random_channel(int qubits, RngSeed seed) {
  check_qubits(qubits, kMaxProcessQubits, "random_channel");
  return channel_from_dilation(random_unitary(qubits + 1, seed), qubits);
}

// ---------------------------------------------------------------------------
// Experiments

Experiment state_experiment(std::string label, const DensityMatrix& rho, ReadoutKind readout,
                            std::int64_t shots) {
  if (!rho.physical) throw InvalidArgument("state_experiment: state is not physical");
  int m = 0;
  while ((Index{1} << m) < rho.dim()) ++m;
  const PauliBasis basis(m);
  const DesignModel design = build_design(make_readout(readout, m, shots), basis);
  Experiment exp;
  exp.label = std::move(label);
  exp.space = OperatorSpace::state(rho.dim());
  exp.truth_p = probabilities(rho, design);
  exp.truth_coords = pauli_coordinates(rho.matrix(), basis);
  exp.shots.assign(static_cast<std::size_t>(design.linear.layout().blocks()), shots);
  exp.truth = rho.op;
  exp.model = design.linear;
  return exp;
}

Experiment process_experiment(std::string label, const ChoiMatrix& channel, ReadoutKind readout,
                              std::int64_t shots) {
  if (!channel.physical()) throw InvalidArgument("process_experiment: channel is not physical");
  if (channel.d_in() != channel.d_out()) {
    throw InvalidArgument("process_experiment: input and output dimensions must agree");
  }
  int m = 0;
  while ((Index{1} << m) < channel.d_in()) ++m;
  const ProcessProtocol protocol = process_protocol(m, readout, shots);
  const ProcessDesignModel design = build_process_design(protocol);
  const RealVector full = pauli_coordinates(channel.matrix(), PauliBasis(2 * m));
  Experiment exp;
  exp.label = std::move(label);
  exp.space = channel.space();
  exp.truth_p = process_probabilities(channel, protocol);
  exp.truth_coords.resize(static_cast<Index>(design.free_index.size()));
  for (std::size_t k = 0; k < design.free_index.size(); ++k) {
    exp.truth_coords(static_cast<Index>(k)) = full(design.free_index[k]);
  }
  exp.shots.assign(static_cast<std::size_t>(design.linear.layout().blocks()), shots);
  exp.truth = channel.op();
  exp.model = design.linear;
  return exp;
}

double truth_distance(const Experiment& exp, const RealVector& f) {
  const double sq = (exp.model.estimate(f) - exp.truth_coords).squaredNorm();
  return std::sqrt(static_cast<double>(exp.space.dim()) * sq / 2.0);
}

double CoverageReport::spread(std::size_t i) const {
  const double c = levels[i];
  return std::sqrt(c * (1.0 - c) / static_cast<double>(replications));
}

CoverageReport coverage_experiment(const Experiment& exp, const CoverageConfig& cfg) {
  if (cfg.replications < 1) throw InvalidArgument("coverage_experiment: replications must be >= 1");
  for (double c : cfg.levels) {
    if (!(c >= 0.0 && c < 1.0)) throw InvalidArgument("coverage levels must lie in [0, 1)");
  }
  const auto t0 = Clock::now();
  const RngSeed root{cfg.seed};
  const std::size_t reps = static_cast<std::size_t>(cfg.replications);
  const std::size_t nl = cfg.levels.size();
  // inside[r * nl + l]; 2 marks a degenerate replication
  std::vector<std::uint8_t> inside(reps * nl, 0);
  std::vector<std::uint8_t> degenerate(reps, 0);

  parallel_for(reps, cfg.workers, [&](std::size_t r) {
    const FrequencyVector data =
        sample_counts(exp.model.layout(), exp.truth_p, exp.shots, root.derive(r));
    const double dist = truth_distance(exp, data.values());
    MomentEstimates mom;
    try {
      mom = moments(exp.model, data, cfg.mode);
    } catch (const DegenerateData&) {
      degenerate[r] = 1;
      return;
    }
    for (std::size_t l = 0; l < nl; ++l) {
      const double delta = confidence_radius(mom, exp.space.dim(), cfg.levels[l]);
      inside[r * nl + l] = dist < delta ? 1 : 0;
    }
  });

  CoverageReport rep;
  rep.label = exp.label;
  rep.levels = cfg.levels;
  rep.replications = cfg.replications;
  rep.shots = exp.shots.empty() ? 0 : exp.shots.front();
  rep.mode = cfg.mode;
  rep.f_in.assign(nl, 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    rep.degenerate += degenerate[r];
    for (std::size_t l = 0; l < nl; ++l) rep.f_in[l] += inside[r * nl + l];
  }
  for (auto& f : rep.f_in) f /= static_cast<double>(reps);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Pure: return "pure";
    case EnsembleKind::Mixed: return "mixed";
    case EnsembleKind::Unitary: return "unitary";
    case EnsembleKind::Channel: return "channel";
  }
  return "pure";
}

EnsembleKind ensemble_kind_from_string(const std::string& s) {
  if (s == "pure") return EnsembleKind::Pure;
  if (s == "mixed") return EnsembleKind::Mixed;
  if (s == "unitary") return EnsembleKind::Unitary;
  if (s == "channel") return EnsembleKind::Channel;
  throw InvalidArgument("unknown ensemble kind '" + s + "'");
}

std::vector<CoverageReport> ensemble_coverage(EnsembleKind kind, int qubits, std::int64_t subjects,
                                              std::int64_t shots, ReadoutKind readout,
                                              const CoverageConfig& cfg) {
  if (subjects < 1) throw InvalidArgument("ensemble_coverage: need at least one subject");
  const RngSeed root{cfg.seed};
  std::vector<CoverageReport> out;
  for (std::int64_t l = 0; l < subjects; ++l) {
    const RngSeed s = root.derive(static_cast<std::uint64_t>(l));
    const std::string label = to_string(kind) + "-" + std::to_string(l);
    Experiment exp;
    switch (kind) {
      case EnsembleKind::Pure:
        exp = state_experiment(label, random_pure_state(qubits, s), readout, shots);
        break;
      case EnsembleKind::Mixed:
        exp = state_experiment(label, random_mixed_state(qubits, s), readout, shots);
        break;
      case EnsembleKind::Unitary:
        exp = process_experiment(label, choi_of_unitary(random_unitary(qubits, s)), readout, shots);
        break;
      case EnsembleKind::Channel:
        exp = process_experiment(label, random_channel(qubits, s), readout, shots);
        break;
    }
    CoverageConfig sub = cfg;
    sub.seed = s.derive(1).value;
    out.push_back(coverage_experiment(exp, sub));
  }
  return out;
}

TimingReport profile_methods(const Experiment& exp, std::int64_t samples, std::uint64_t seed,
                             double level) {
  TimingReport rep;
  rep.label = exp.label;
  rep.outcomes = exp.model.outcomes();
  rep.parameters = exp.model.parameters();
  rep.samples = samples;
  rep.level = level;

  auto t0 = Clock::now();
  const LinearModel model(exp.model.design(), exp.model.offset(), exp.model.layout());
  rep.model_seconds = seconds_since(t0);

  const FrequencyVector data =
      sample_counts(model.layout(), exp.truth_p, exp.shots, RngSeed{seed}.derive(0));

  // median over batches of at least a few milliseconds each
  std::vector<double> runs;
  for (int batch = 0; batch < 7; ++batch) {
    std::int64_t iters = 0;
    t0 = Clock::now();
    double elapsed = 0.0;
    do {
      const MomentEstimates mom = moments(model, data);
      rep.gamma_radius = confidence_radius(mom, exp.space.dim(), level);
      ++iters;
      elapsed = seconds_since(t0);
    } while (elapsed < 2e-3);
    runs.push_back(elapsed / static_cast<double>(iters));
  }
  std::sort(runs.begin(), runs.end());
  rep.gamma_seconds = runs[runs.size() / 2];

  t0 = Clock::now();
  const EmpiricalDistribution dist =
      bootstrap_xi(model, data, BootstrapConfig{samples, RngSeed{seed}.derive(1).value, 1});
  rep.mc_radius = mc_confidence_radius(dist, exp.space.dim(), level);
  rep.mc_seconds = seconds_since(t0);
  return rep;
}

}  // namespace tomoci
