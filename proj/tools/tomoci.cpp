// tomoci: tomography confidence regions from the command line.
//
// Exit codes: 0 success, 1 schema or validation error, 2 numerical failure
// (rank-deficient design, degenerate data).

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tomoci/affine.hpp"
#include "tomoci/bootstrap.hpp"
#include "tomoci/counts_io.hpp"
#include "tomoci/errors.hpp"
#include "tomoci/qpt.hpp"
#include "tomoci/qst.hpp"
#include "tomoci/reports.hpp"
#include "tomoci/sim.hpp"
#include "tomoci/subjects.hpp"

using namespace tomoci;

namespace {

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_text_file(out, content);
  }
}

ComplexMatrix load_matrix(const std::string& path) {
  const Json j = Json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaError(path, "expected a JSON matrix object");
  if (!j.contains("real") || !j["real"].is_array()) throw SchemaError(path + ":real", "missing array");
  const auto& re = j["real"];
  const Index n = static_cast<Index>(re.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto& row = re[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw SchemaError(path + ":real[" + std::to_string(r) + "]", "matrix must be square");
    }
    for (Index c = 0; c < n; ++c) m(r, c).real(row[static_cast<std::size_t>(c)].get<double>());
  }
  if (j.contains("imag")) {
    const auto& im = j["imag"];
    if (!im.is_array() || static_cast<Index>(im.size()) != n) {
      throw SchemaError(path + ":imag", "shape differs from real part");
    }
    for (Index r = 0; r < n; ++r) {
      const auto& row = im[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != n) {
        throw SchemaError(path + ":imag[" + std::to_string(r) + "]", "shape differs from real part");
      }
      for (Index c = 0; c < n; ++c) m(r, c).imag(row[static_cast<std::size_t>(c)].get<double>());
    }
  }
  return m;
}

int qubits_of_dim(Index d) {
  int m = 0;
  while ((Index{1} << m) < d) ++m;
  if ((Index{1} << m) != d) throw InvalidArgument("dimension " + std::to_string(d) + " is not a power of two");
  return m;
}

// Built-in name or path to a matrix file.
Subject resolve_subject(const std::string& source, bool process) {
  if (!std::filesystem::exists(source)) {
    Subject s = builtin_subject(source);
    if (s.is_process() != process) {
      throw InvalidArgument("subject '" + source + "' is a " + (process ? "state" : "channel"));
    }
    return s;
  }
  const ComplexMatrix m = load_matrix(source);
  Subject s;
  s.name = source;
  if (process) {
    const int q = qubits_of_dim(m.rows());
    if (q % 2 != 0) throw InvalidArgument("Choi matrix dimension must be d_in * d_out with d_in = d_out");
    const Index d = Index{1} << (q / 2);
    s.qubits = q / 2;
    s.channel = ChoiMatrix::make_physical(m, d, d);
  } else {
    s.qubits = qubits_of_dim(m.rows());
    s.state = DensityMatrix::make_physical(m);
  }
  return s;
}

struct Analysis {
  CountsFile file;
  FrequencyVector data;
  LinearModel model;
  OperatorSpace space;
  HermitianOperator estimate;
  bool physical = false;
};

Analysis analyze(const std::string& counts_path) {
  Analysis a{parse_counts(counts_path), {}, {}, {}, {}, false};
  a.data = to_frequency_vector(a.file);
  if (a.file.is_process()) {
    const ProcessDesignModel design = build_process_design(process_protocol_of(a.file));
    const ChoiMatrix c = process_linear_inversion(design, a.data);
    a.model = design.linear;
    a.space = c.space();
    a.estimate = c.op();
    a.physical = c.physical();
  } else {
    const DesignModel design = build_design(readout_protocol(a.file), PauliBasis(a.file.qubits));
    const DensityMatrix rho = linear_inversion(design, a.data);
    a.model = design.linear;
    a.space = OperatorSpace::state(rho.dim());
    a.estimate = rho.op;
    a.physical = rho.physical;
  }
  return a;
}

Json estimate_json(const Analysis& a) {
  Json j;
  j["kind"] = a.file.kind;
  j["qubits"] = a.file.qubits;
  j["readout"] = to_string(a.file.readout);
  j["shots_per_block"] = a.file.shots_per_block;
  j["estimate"] = matrix_json(a.estimate.matrix());
  j["trace"] = a.estimate.trace();
  j["min_eigenvalue"] = a.estimate.min_eigenvalue();
  j["physical"] = a.physical;
  return j;
}

AffineFunctional parse_functional(const std::string& source, const Analysis& a) {
  const auto colon = source.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgument("functional must be fidelity:<target> or observable:<matrix file>");
  }
  const std::string head = source.substr(0, colon);
  const std::string arg = source.substr(colon + 1);
  if (head == "fidelity") {
    const Subject t = resolve_subject(arg, a.file.is_process());
    return t.is_process() ? fidelity_functional(*t.channel) : fidelity_functional(*t.state);
  }
  if (head == "observable") {
    if (a.file.is_process()) throw Unsupported("observable functionals apply to state tomography only");
    return observable_functional(load_matrix(arg));
  }
  throw InvalidArgument("unknown functional '" + head + "'");
}

void print_error(const char* kind, const std::string& msg, const std::string& path = {}) {
  Json j;
  j["error"] = kind;
  j["message"] = msg;
  if (!path.empty()) j["path"] = path;
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-inversion tomography with gamma-approximated confidence regions"};
  app.require_subcommand(1);

  // simulate
  std::string sim_kind = "qst", sim_state, sim_channel, sim_readout = "mub", sim_out;
  int sim_qubits = 0;
  std::int64_t sim_shots = 10000;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Sample a counts file from a known state or channel");
  simulate->add_option("--kind", sim_kind)->check(CLI::IsMember({"qst", "qpt"}));
  simulate->add_option("--state", sim_state, "Built-in state name or density-matrix file");
  simulate->add_option("--channel", sim_channel, "Built-in channel name or Choi-matrix file");
  simulate->add_option("--readout", sim_readout)->check(CLI::IsMember({"mub", "sic"}));
  simulate->add_option("--qubits", sim_qubits, "Checked against the subject if given");
  simulate->add_option("--shots", sim_shots, "Shots per measurement configuration");
  simulate->add_option("--seed", sim_seed);
  simulate->add_option("--out", sim_out);

  // estimate
  std::string est_counts, est_out;
  auto* estimate = app.add_subcommand("estimate", "Linear-inversion point estimate");
  estimate->add_option("--counts", est_counts)->required();
  estimate->add_option("--out", est_out);

  // ci
  std::string ci_counts, ci_out, ci_mode = "gaussian";
  std::vector<double> ci_levels{0.95};
  std::optional<double> ci_radius;
  auto* ci = app.add_subcommand("ci", "Confidence radius for given levels (or level for a radius)");
  ci->add_option("--counts", ci_counts)->required();
  ci->add_option("--level", ci_levels)->delimiter(',');
  ci->add_option("--radius", ci_radius);
  ci->add_option("--mode", ci_mode)->check(CLI::IsMember({"gaussian", "leading-order"}));
  ci->add_option("--out", ci_out);

  // affine-ci
  std::string aff_counts, aff_functional, aff_out, aff_mode = "gaussian";
  double aff_level = 0.95;
  bool aff_clamp = false;
  auto* affine = app.add_subcommand("affine-ci", "Interval for an affine functional");
  affine->add_option("--counts", aff_counts)->required();
  affine->add_option("--functional", aff_functional, "fidelity:<target> or observable:<matrix file>")
      ->required();
  affine->add_option("--level", aff_level);
  affine->add_flag("--clamp", aff_clamp, "Clamp fidelity intervals to [0, 1]");
  affine->add_option("--mode", aff_mode)->check(CLI::IsMember({"gaussian", "leading-order"}));
  affine->add_option("--out", aff_out);

  // mc-compare
  std::string mc_counts, mc_out, mc_mode = "gaussian";
  std::int64_t mc_samples = 1000;
  std::uint64_t mc_seed = 0;
  int mc_points = 201;
  unsigned mc_workers = 0;
  auto* mc = app.add_subcommand("mc-compare", "Gamma CDF against the bootstrap empirical CDF");
  mc->add_option("--counts", mc_counts)->required();
  mc->add_option("--samples", mc_samples);
  mc->add_option("--seed", mc_seed);
  mc->add_option("--points", mc_points);
  mc->add_option("--mode", mc_mode)->check(CLI::IsMember({"gaussian", "leading-order"}));
  mc->add_option("--workers", mc_workers, "0 = all cores; output does not depend on it");
  mc->add_option("--out", mc_out);

  // verify-coverage
  std::string cov_subject, cov_ensemble, cov_out, cov_mode = "gaussian", cov_readout = "mub";
  std::vector<double> cov_levels{0.5, 0.75, 0.9, 0.95, 0.99};
  std::int64_t cov_shots = 10000, cov_reps = 2000, cov_count = 10;
  int cov_qubits = 1;
  std::uint64_t cov_seed = 0;
  unsigned cov_workers = 0;
  auto* cov = app.add_subcommand("verify-coverage", "Coverage of the confidence regions");
  auto* cov_subj_opt = cov->add_option("--subject", cov_subject, "Built-in subject name");
  auto* cov_ens_opt = cov->add_option("--ensemble", cov_ensemble, "pure|mixed|unitary|channel")
                          ->check(CLI::IsMember({"pure", "mixed", "unitary", "channel"}));
  cov_subj_opt->excludes(cov_ens_opt);
  cov->add_option("--qubits", cov_qubits, "Ensemble qubit count");
  cov->add_option("--count", cov_count, "Ensemble size");
  cov->add_option("--levels", cov_levels)->delimiter(',');
  cov->add_option("--shots", cov_shots);
  cov->add_option("--reps", cov_reps);
  cov->add_option("--seed", cov_seed);
  cov->add_option("--mode", cov_mode)->check(CLI::IsMember({"gaussian", "leading-order"}));
  cov->add_option("--readout", cov_readout)->check(CLI::IsMember({"mub", "sic"}));
  cov->add_option("--workers", cov_workers);
  cov->add_option("--out", cov_out);

  // bench
  std::string bench_subject, bench_out, bench_readout = "mub";
  std::int64_t bench_samples = 1000, bench_shots = 10000;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "Time the gamma radius against the bootstrap radius");
  bench->add_option("--subject", bench_subject)->required();
  bench->add_option("--samples", bench_samples);
  bench->add_option("--shots", bench_shots);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--readout", bench_readout)->check(CLI::IsMember({"mub", "sic"}));
  bench->add_option("--out", bench_out);

  // import
  std::string imp_from = "generic-counts", imp_in, imp_out, imp_kind = "qst", imp_readout = "mub";
  bool imp_little = false;
  auto* import = app.add_subcommand("import", "Convert an external counts export");
  import->add_option("--from", imp_from)->check(CLI::IsMember({"generic-counts"}));
  import->add_option("--in", imp_in)->required();
  import->add_option("--kind", imp_kind)->check(CLI::IsMember({"qst", "qpt"}));
  import->add_option("--readout", imp_readout)->check(CLI::IsMember({"mub", "sic"}));
  import->add_flag("--little-endian", imp_little, "Bitstring keys list qubit 0 last");
  import->add_option("--out", imp_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*simulate) {
      const bool process = sim_kind == "qpt";
      const std::string& source = process ? sim_channel : sim_state;
      if (source.empty()) throw InvalidArgument(process ? "--channel is required" : "--state is required");
      const Subject s = resolve_subject(source, process);
      if (sim_qubits != 0 && sim_qubits != s.qubits) {
        throw InvalidArgument("--qubits " + std::to_string(sim_qubits) + " does not match subject '" +
                              s.name + "' on " + std::to_string(s.qubits) + " qubits");
      }
      const ReadoutKind readout = readout_from_string(sim_readout);
      const Experiment exp = make_experiment(s, readout, sim_shots);
      const FrequencyVector data =
          sample_counts(exp.model.layout(), exp.truth_p, exp.shots, RngSeed{sim_seed});
      const MeasurementProtocol proto = make_readout(readout, s.qubits, sim_shots);
      const Index inputs = process ? Index{1} << (2 * s.qubits) : 1;
      emit(sim_out, write_counts_text(counts_file_from_data(proto, inputs, data)));
    } else if (*estimate) {
      emit(est_out, dump(estimate_json(analyze(est_counts))));
    } else if (*ci) {
      const Analysis a = analyze(ci_counts);
      const MomentEstimates mom = moments(a.model, a.data, moment_mode_from_string(ci_mode));
      Json j = estimate_json(a);
      j["moments"] = moments_json(mom);
      Json regions = Json::array();
      if (ci_radius) {
        regions.push_back(region_json(region_at_radius(a.estimate, a.space, mom, *ci_radius)));
      } else {
        for (double c : ci_levels) regions.push_back(region_json(region_at_level(a.estimate, a.space, mom, c)));
      }
      j["regions"] = std::move(regions);
      emit(ci_out, dump(j));
    } else if (*affine) {
      const Analysis a = analyze(aff_counts);
      const MomentEstimates mom = moments(a.model, a.data, moment_mode_from_string(aff_mode));
      const ConfidenceRegion region = region_at_level(a.estimate, a.space, mom, aff_level);
      const AffineFunctional fn = parse_functional(aff_functional, a);
      Json j;
      j["center_value"] = evaluate(fn, a.estimate);
      j["region"] = region_json(region);
      j["moments"] = moments_json(mom);
      j["interval"] = interval_json(fn, affine_interval(fn, region, aff_clamp));
      emit(aff_out, dump(j));
    } else if (*mc) {
      const Analysis a = analyze(mc_counts);
      const MomentEstimates mom = moments(a.model, a.data, moment_mode_from_string(mc_mode));
      const EmpiricalDistribution dist =
          bootstrap_xi(a.model, a.data, BootstrapConfig{mc_samples, mc_seed, mc_workers});
      emit(mc_out, cdf_csv(mom, dist, a.space.dim(), mc_points));
    } else if (*cov) {
      CoverageConfig cfg;
      cfg.levels = cov_levels;
      cfg.replications = cov_reps;
      cfg.mode = moment_mode_from_string(cov_mode);
      cfg.seed = cov_seed;
      cfg.workers = cov_workers;
      const ReadoutKind readout = readout_from_string(cov_readout);
      std::vector<CoverageReport> reports;
      if (!cov_ensemble.empty()) {
        reports = ensemble_coverage(ensemble_kind_from_string(cov_ensemble), cov_qubits, cov_count,
                                    cov_shots, readout, cfg);
      } else {
        if (cov_subject.empty()) throw InvalidArgument("--subject or --ensemble is required");
        reports.push_back(
            coverage_experiment(make_experiment(builtin_subject(cov_subject), readout, cov_shots), cfg));
      }
      emit(cov_out, coverage_csv(reports));
    } else if (*bench) {
      const Experiment exp = make_experiment(builtin_subject(bench_subject),
                                             readout_from_string(bench_readout), bench_shots);
      emit(bench_out, dump(timing_json(profile_methods(exp, bench_samples, bench_seed))));
    } else if (*import) {
      ImportOptions opts;
      opts.kind = imp_kind;
      opts.readout = readout_from_string(imp_readout);
      opts.little_endian = imp_little;
      emit(imp_out, write_counts_text(import_generic_counts(read_text_file(imp_in), opts)));
    }
  } catch (const SchemaError& e) {
    print_error("schema", e.what(), e.path());
    return 1;
  } catch (const InvalidArgument& e) {
    print_error("invalid-argument", e.what());
    return 1;
  } catch (const Unsupported& e) {
    print_error("unsupported", e.what());
    return 1;
  } catch (const IoError& e) {
    print_error("io", e.what());
    return 1;
  } catch (const NotInformationallyComplete& e) {
    print_error("rank-deficient", e.what());
    return 2;
  } catch (const DegenerateData& e) {
    print_error("degenerate-data", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("error", e.what());
    return 1;
  }
  return 0;
}
