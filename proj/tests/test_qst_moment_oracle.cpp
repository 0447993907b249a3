// Closed-form moment estimates against exact enumeration.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "enumeration.hpp"
#include "tomoci/qpt.hpp"
#include "tomoci/qst.hpp"
#include "tomoci/sim.hpp"
#include "tomoci/subjects.hpp"

using namespace tomoci;
using namespace testing;

namespace {

std::vector<DensityMatrix> oracle_states() {
  std::vector<DensityMatrix> out;
  for (const char* name : {"qubit0", "qubit-theta", "mixed1"}) out.push_back(*builtin_subject(name).state);
  out.push_back(random_mixed_state(1, RngSeed{77}));
  return out;
}

}  // namespace

TEST_SUITE("gaussian") {
  TEST_CASE("gaussian mean is exact on single-qubit SIC data") {
    const PauliBasis basis(1);
    for (int n = 1; n <= 6; ++n) {
      const DesignModel m = build_design(sic_protocol(1, n), basis);
      for (const auto& rho : oracle_states()) {
        const RealVector p = probabilities(rho, m);
        const Exact e = enumerate(m.linear, p, n);
        const MomentEstimates g = moments(m.linear, p, {n});
        CAPTURE(n);
        CHECK(std::abs(g.mean - e.mean) <= 1e-12 * e.mean);
        CHECK(std::abs(g.mean / e.mean - 1.0) <= 0.05);
      }
    }
  }

  TEST_CASE("gaussian variance error shrinks with N on single-qubit SIC data") {
    const PauliBasis basis(1);
    for (const auto& rho : oracle_states()) {
      double prev = 1e300;
      for (int n : {3, 6, 12, 24}) {
        const DesignModel m = build_design(sic_protocol(1, n), basis);
        const RealVector p = probabilities(rho, m);
        const Exact e = enumerate(m.linear, p, n);
        const double rel = std::abs(moments(m.linear, p, {n}).variance / e.variance - 1.0);
        CAPTURE(n);
        CHECK(rel < prev);
        prev = rel;
      }
      CHECK(prev < 0.15);
    }
  }

  TEST_CASE("gaussian mean is exact for a process toy with four inputs and SIC readout") {
    const ProcessProtocol proto = process_protocol(1, ReadoutKind::Sic, 4);
    const ProcessDesignModel m = build_process_design(proto);
    REQUIRE(m.linear.layout().blocks() == 4);
    const ChoiMatrix c = depolarizing_channel(1, 0.1);
    const RealVector p = process_probabilities(c, proto);
    const Exact e = enumerate(m.linear, p, 4);
    const MomentEstimates g = moments(m.linear, p, {4, 4, 4, 4});
    CHECK(std::abs(g.mean - e.mean) <= 1e-12 * e.mean);
    CHECK(std::abs(g.mean / e.mean - 1.0) <= 0.05);
  }

  TEST_CASE("enumeration agrees with a direct check on a two-outcome toy") {
    // single binary block with design (1; -1): pinv = (1/2, -1/2), so
    // pinv (f - p) = f_0 - p_0
    RealMatrix a(2, 1);
    a << 1.0, -1.0;
    RealVector off(2);
    off << 0.5, 0.5;
    const LinearModel lm(a, off, BlockLayout({2}));
    RealVector p(2);
    p << 0.3, 0.7;
    const int n = 5;
    const Exact e = enumerate(lm, p, n);
    CHECK(e.mean == doctest::Approx(0.3 * 0.7 / n).epsilon(1e-13));
    // fourth central moment of a binomial proportion
    const double q = 0.3 * 0.7;
    const double mu4 = q * (1 + 3 * (n - 2) * q) / (n * n * n);
    CHECK(e.variance == doctest::Approx(mu4 - e.mean * e.mean).epsilon(1e-12));
  }
}

TEST_SUITE("leading-order") {
  TEST_CASE("leading-order moments lie within a factor of 3 of the exact moments") {
    const PauliBasis basis(1);
    for (int n = 2; n <= 6; ++n) {
      const DesignModel m = build_design(sic_protocol(1, n), basis);
      for (const auto& rho : oracle_states()) {
        const RealVector p = probabilities(rho, m);
        const Exact e = enumerate(m.linear, p, n);
        const MomentEstimates pm = moments(m.linear, p, {n}, MomentMode::LeadingOrder);
        CAPTURE(n);
        CAPTURE(pm.mean / e.mean);
        CAPTURE(pm.variance / e.variance);
        CHECK(pm.mean / e.mean <= 3.0);
        CHECK(pm.mean / e.mean >= 1.0 / 3.0);
        CHECK(pm.variance / e.variance <= 3.0);
        CHECK(pm.variance / e.variance >= 1.0 / 3.0);
      }
    }
  }
}
