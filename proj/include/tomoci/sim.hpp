#pragma once

// Synthetic tomography data and the calibration experiments built on it.

#include <cstdint>
#include <string>
#include <vector>

#include "tomoci/bootstrap.hpp"
#include "tomoci/qpt.hpp"
#include "tomoci/qst.hpp"
#include "tomoci/rng.hpp"

namespace tomoci {

FrequencyVector sample_counts(const BlockLayout& layout, const RealVector& p,
                              const std::vector<std::int64_t>& shots, RngSeed seed);
FrequencyVector sample_counts(const BlockLayout& layout, const RealVector& p, std::int64_t shots,
                              RngSeed seed);

// Haar-random pure state.
DensityMatrix random_pure_state(int qubits, RngSeed seed);
// Hilbert-Schmidt random mixed state G G^dag / Tr(G G^dag), G square Ginibre.
DensityMatrix random_mixed_state(int qubits, RngSeed seed);
// Haar-random unitary: QR of a Ginibre matrix with the phases of diag(R)
// moved into Q.
ComplexMatrix random_unitary(int qubits, RngSeed seed);
// Phi(rho) = Tr_anc[U (rho (x) |0><0|) U^dag] with one ancilla qubit placed
// after the system qubits.
ChoiMatrix channel_from_dilation(const ComplexMatrix& u, int qubits);
ChoiMatrix random_channel(int qubits, RngSeed seed);

// Everything a replication loop needs: the linear model, the outcome
// probabilities of the true object and its estimated coordinates.
struct Experiment {
  std::string label;
  OperatorSpace space;
  LinearModel model;
  RealVector truth_p;
  RealVector truth_coords;
  std::vector<std::int64_t> shots;
  HermitianOperator truth;
};

Experiment state_experiment(std::string label, const DensityMatrix& rho, ReadoutKind readout,
                            std::int64_t shots);
Experiment process_experiment(std::string label, const ChoiMatrix& channel, ReadoutKind readout,
                              std::int64_t shots);

// HS distance between the truth and the estimate from frequencies f.
double truth_distance(const Experiment& exp, const RealVector& f);

struct CoverageReport {
  std::string label;
  std::vector<double> levels;
  std::vector<double> f_in;
  std::int64_t replications = 0;
  std::int64_t shots = 0;
  MomentMode mode = MomentMode::Gaussian;
  // Replications whose moments were degenerate; counted as outside.
  std::int64_t degenerate = 0;
  double wall_seconds = 0.0;

  double deviation(std::size_t i) const { return f_in[i] - levels[i]; }
  // Binomial standard deviation of f_in at the given level.
  double spread(std::size_t i) const;
};

struct CoverageConfig {
  std::vector<double> levels{0.5, 0.75, 0.9, 0.95, 0.99};
  std::int64_t replications = 2000;
  MomentMode mode = MomentMode::Gaussian;
  std::uint64_t seed = 0;
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

// Replication r samples counts from the true probabilities with stream
// seed.derive(r), inverts them, computes the radius from the observed
// frequencies and records whether the truth lies strictly inside.
CoverageReport coverage_experiment(const Experiment& exp, const CoverageConfig& cfg);

enum class EnsembleKind { Pure, Mixed, Unitary, Channel };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& s);

// Subject l is drawn from seed.derive(l) and its coverage run uses
// seed.derive(l).derive(1).
std::vector<CoverageReport> ensemble_coverage(EnsembleKind kind, int qubits, std::int64_t subjects,
                                              std::int64_t shots, ReadoutKind readout,
                                              const CoverageConfig& cfg);

struct TimingReport {
  std::string label;
  Index outcomes = 0;
  Index parameters = 0;
  std::int64_t samples = 0;
  double level = 0.95;
  // Model construction (pseudo-inverse and Gram kernel), shared by both
  // methods and excluded from their timings.
  double model_seconds = 0.0;
  double gamma_seconds = 0.0;
  double mc_seconds = 0.0;
  double gamma_radius = 0.0;
  double mc_radius = 0.0;

  double speedup() const { return mc_seconds / gamma_seconds; }
};

// Times the gamma radius (moments plus inverse CDF, median over repeated
// runs) against the bootstrap radius (S resamples plus quantile, single
// worker) on one dataset sampled from the truth.
TimingReport profile_methods(const Experiment& exp, std::int64_t samples, std::uint64_t seed,
                             double level = 0.95);

}  // namespace tomoci
