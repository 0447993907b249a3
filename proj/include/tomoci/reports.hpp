#pragma once

// JSON and CSV report emission. Field order is fixed so identical inputs give
// byte-identical files.

#include <string>
#include <vector>

#include "json.hpp"
#include "tomoci/affine.hpp"
#include "tomoci/bootstrap.hpp"
#include "tomoci/qst.hpp"
#include "tomoci/sim.hpp"

namespace tomoci {

using Json = nlohmann::ordered_json;

// {"rows", "cols", "real": [[...]], "imag": [[...]]}, row-major.
Json matrix_json(const ComplexMatrix& m);
Json moments_json(const MomentEstimates& m);
Json region_json(const ConfidenceRegion& r);
Json interval_json(const AffineFunctional& fn, const Interval& iv);
Json coverage_json(const CoverageReport& r);
Json timing_json(const TimingReport& r);

// Radius-level table for a set of levels.
Json radius_table_json(const MomentEstimates& m, Index dim, const std::vector<double>& levels);

// delta, gamma_cdf, mc_cdf on a uniform delta grid up to the largest sample
// radius (inclusive).
std::string cdf_csv(const MomentEstimates& m, const EmpiricalDistribution& dist, Index dim,
                    int points = 201);

// subject,shots,reps,mode,level,f_in,deviation,spread,degenerate
std::string coverage_csv(const std::vector<CoverageReport>& reports);

std::string dump(const Json& j);

}  // namespace tomoci
