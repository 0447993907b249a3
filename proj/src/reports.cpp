#include "tomoci/reports.hpp"

#include <cmath>
#include <cstdio>

namespace tomoci {
namespace {

// %.17g keeps doubles exact in CSV.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string space_kind(const OperatorSpace& s) {
  return s.kind == OperatorSpace::Kind::State ? "state" : "process";
}

}  // namespace

Json matrix_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["real"] = std::move(re);
  j["imag"] = std::move(im);
  return j;
}

Json moments_json(const MomentEstimates& m) {
  Json j;
  j["mode"] = to_string(m.mode);
  j["mean"] = m.mean;
  j["variance"] = m.variance;
  j["shape"] = m.gamma().shape();
  j["scale"] = m.gamma().scale();
  return j;
}

Json region_json(const ConfidenceRegion& r) {
  Json j;
  j["space"] = space_kind(r.space);
  j["d_in"] = r.space.d_in;
  j["d_out"] = r.space.d_out;
  j["radius"] = r.radius;
  j["level"] = r.level;
  return j;
}

Json interval_json(const AffineFunctional& fn, const Interval& iv) {
  Json j;
  j["functional"] = fn.label;
  j["level"] = iv.level;
  j["lo"] = iv.lo;
  j["hi"] = iv.hi;
  j["clamped"] = iv.clamped;
  return j;
}

Json radius_table_json(const MomentEstimates& m, Index dim, const std::vector<double>& levels) {
  Json rows = Json::array();
  for (double c : levels) {
    Json r;
    r["level"] = c;
    r["radius"] = confidence_radius(m, dim, c);
    rows.push_back(std::move(r));
  }
  return rows;
}

Json coverage_json(const CoverageReport& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    Json row;
    row["level"] = r.levels[i];
    row["f_in"] = r.f_in[i];
    row["deviation"] = r.deviation(i);
    row["spread"] = r.spread(i);
    rows.push_back(std::move(row));
  }
  Json j;
  j["subject"] = r.label;
  j["shots"] = r.shots;
  j["replications"] = r.replications;
  j["mode"] = to_string(r.mode);
  j["degenerate"] = r.degenerate;
  j["levels"] = std::move(rows);
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

Json timing_json(const TimingReport& r) {
  Json j;
  j["subject"] = r.label;
  j["outcomes"] = r.outcomes;
  j["parameters"] = r.parameters;
  j["samples"] = r.samples;
  j["level"] = r.level;
  j["model_seconds"] = r.model_seconds;
  j["gamma_seconds"] = r.gamma_seconds;
  j["mc_seconds"] = r.mc_seconds;
  j["speedup"] = r.speedup();
  j["gamma_radius"] = r.gamma_radius;
  j["mc_radius"] = r.mc_radius;
  return j;
}

std::string cdf_csv(const MomentEstimates& m, const EmpiricalDistribution& dist, Index dim,
                    int points) {
  if (points < 2) throw InvalidArgument("cdf_csv: need at least two grid points");
  const double d = static_cast<double>(dim);
  const double top = std::sqrt(d * dist.samples().back() / 2.0);
  std::string out = "delta,gamma_cdf,mc_cdf\n";
  for (int k = 0; k < points; ++k) {
    const double delta = top * k / (points - 1);
    const double x = 2.0 * delta * delta / d;
    out += num(delta) + "," + num(gamma_cdf(m.gamma(), x)) + "," + num(empirical_cdf(dist, x)) +
           "\n";
  }
  return out;
}

std::string coverage_csv(const std::vector<CoverageReport>& reports) {
  std::string out = "subject,shots,reps,mode,level,f_in,deviation,spread,degenerate\n";
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      out += r.label + "," + std::to_string(r.shots) + "," + std::to_string(r.replications) + "," +
             to_string(r.mode) + "," + num(r.levels[i]) + "," + num(r.f_in[i]) + "," +
             num(r.deviation(i)) + "," + num(r.spread(i)) + "," + std::to_string(r.degenerate) +
             "\n";
    }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tomoci
