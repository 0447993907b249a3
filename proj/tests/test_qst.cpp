#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tomoci/qst.hpp"
#include "tomoci/sim.hpp"
#include "tomoci/subjects.hpp"

using namespace tomoci;
using namespace testing;

namespace {

DesignModel mub1(std::int64_t n = 10000) { return build_design(mub_protocol(1, n), PauliBasis(1)); }

FrequencyVector freqs(const DesignModel& m, std::vector<double> f) {
  RealVector v = Eigen::Map<RealVector>(f.data(), static_cast<Index>(f.size()));
  return FrequencyVector::from_frequencies(
      m.linear.layout(), v,
      std::vector<std::int64_t>(static_cast<std::size_t>(m.linear.layout().blocks()), m.shots_per_block));
}

}  // namespace

TEST_CASE("MUB design rows") {
  const DesignModel m = mub1();
  RealVector row(4);
  row << 1, 1, 0, 0;
  CHECK((m.linear.design().row(0).transpose() - row).norm() < 1e-15);
  CHECK(numerical_rank(m.linear.design()) == 4);
  CHECK((m.linear.pinv() * m.linear.design() - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(m.linear.has_gram());
  CHECK((m.linear.gram() - m.linear.gram().transpose()).norm() < 1e-15);
}

TEST_CASE("design reproduces Born probabilities") {
  std::mt19937_64 rng(4);
  for (int q = 1; q <= 3; ++q) {
    for (ReadoutKind k : {ReadoutKind::Mub, ReadoutKind::Sic}) {
      const MeasurementProtocol proto = make_readout(k, q, 10);
      const PauliBasis basis(q);
      const DesignModel m = build_design(proto, basis);
      const DensityMatrix rho = random_mixed_state(q, RngSeed{rng()});
      const RealVector p = m.linear.design() * pauli_coordinates(rho.matrix(), basis);
      Index row = 0;
      for (const auto& b : proto.blocks)
        for (const auto& e : b.elements) CHECK(std::abs(p(row++) - (e * rho.matrix()).trace().real()) < 1e-12);
    }
  }
}

TEST_CASE("fully mixed state gives uniform MUB blocks") {
  const DesignModel m = build_design(mub_protocol(2, 10), PauliBasis(2));
  const RealVector p = probabilities(maximally_mixed(4), m);
  CHECK((p.array() - 0.25).abs().maxCoeff() < 1e-15);
}

TEST_CASE("probabilities") {
  const RealVector p = probabilities(ket0(), mub1());
  RealVector expect(6);
  expect << 0.5, 0.5, 0.5, 0.5, 1, 0;
  CHECK((p - expect).norm() < 1e-15);

  const DesignModel sic = build_design(sic_protocol(1, 10), PauliBasis(1));
  CHECK((probabilities(maximally_mixed(2), sic).array() - 0.25).abs().maxCoeff() < 1e-15);

  const Subject ghz = builtin_subject("ghz3");
  const DesignModel m3 = build_design(mub_protocol(3, 10), PauliBasis(3));
  const RealVector pg = probabilities(*ghz.state, m3);
  const Index zzz = m3.linear.layout().begin(26);
  CHECK(pg(zzz) == doctest::Approx(0.5));
  CHECK(pg(zzz + 7) == doctest::Approx(0.5));
  CHECK(pg.segment(zzz + 1, 6).cwiseAbs().maxCoeff() < 1e-15);

  ComplexMatrix bad(2, 2);
  bad << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(probabilities(DensityMatrix::make(bad), mub1()), InvalidArgument);
}

TEST_CASE("linear inversion") {
  const DesignModel m = mub1();
  const DensityMatrix r0 = linear_inversion(m, freqs(m, {0.5, 0.5, 0.5, 0.5, 1, 0}));
  CHECK((r0.matrix() - ket0().matrix()).norm() < 1e-14);
  CHECK(r0.physical);

  const DensityMatrix bad = linear_inversion(m, freqs(m, {1, 0, 0.5, 0.5, 1, 0}));
  CHECK_FALSE(bad.physical);
  const RealVector ev = bad.op.eigenvalues();
  CHECK(ev(0) == doctest::Approx((1 - std::sqrt(2.0)) / 2));
  CHECK(ev(1) == doctest::Approx((1 + std::sqrt(2.0)) / 2));
  const RealVector r = pauli_coordinates(bad.matrix(), PauliBasis(1));
  CHECK(2 * r(1) == doctest::Approx(1.0));
  CHECK(std::abs(r(2)) < 1e-15);
  CHECK(2 * r(3) == doctest::Approx(1.0));

  const DensityMatrix mixed = linear_inversion(m, freqs(m, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5}));
  CHECK((mixed.matrix() - maximally_mixed(2).matrix()).norm() < 1e-15);

  const DesignModel other = build_design(sic_protocol(1, 10), PauliBasis(1));
  CHECK_THROWS_AS(linear_inversion(other, freqs(m, {0.5, 0.5, 0.5, 0.5, 1, 0})), InvalidArgument);
}

TEST_CASE("noiseless recovery and unit trace for built-in states") {
  for (const auto& name : builtin_subject_names()) {
    const Subject s = builtin_subject(name);
    if (s.is_process()) continue;
    for (ReadoutKind k : {ReadoutKind::Mub, ReadoutKind::Sic}) {
      const DesignModel m = build_design(make_readout(k, s.qubits, 100), PauliBasis(s.qubits));
      const DensityMatrix est = linear_inversion(
          m, FrequencyVector::from_frequencies(m.linear.layout(), probabilities(*s.state, m),
                                               std::vector<std::int64_t>(
                                                   static_cast<std::size_t>(m.linear.layout().blocks()), 100)));
      CAPTURE(name);
      CHECK((est.matrix() - s.state->matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("xi statistic and the hs distance identity") {
  std::mt19937_64 rng(99);
  for (int q = 1; q <= 3; ++q) {
    const DesignModel m = build_design(mub_protocol(q, 200), PauliBasis(q));
    const double d = static_cast<double>(Index{1} << q);
    const double pinv_norm = Eigen::JacobiSVD<RealMatrix>(m.linear.pinv()).singularValues()(0);
    for (int t = 0; t < 20; ++t) {
      const DensityMatrix rho = random_mixed_state(q, RngSeed{rng()});
      const RealVector p = probabilities(rho, m);
      const FrequencyVector f = sample_counts(m.linear.layout(), p, 200, RngSeed{rng()});
      const DensityMatrix est = linear_inversion(m, f);
      CHECK(std::abs(est.op.trace() - 1.0) < 1e-10);
      const double xi = xi_statistic(m, f.values(), p);
      const double hs = hs_distance(est.op, rho.op);
      CHECK(std::abs(hs * hs - d / 2 * xi) < 1e-12);
      CHECK(xi <= pinv_norm * pinv_norm * (f.values() - p).squaredNorm() * (1 + 1e-12));
      CHECK(xi_statistic(m, p, p) == 0.0);
    }
  }
  CHECK_THROWS_AS(xi_statistic(mub1(), RealVector::Zero(3), RealVector::Zero(6)), InvalidArgument);
}

TEST_CASE("frequency vector validation") {
  const BlockLayout layout({2, 2});
  CHECK_THROWS_AS(FrequencyVector::from_counts(layout, {5, 5, 0, 0}), DegenerateData);
  CHECK_THROWS_AS(FrequencyVector::from_counts(layout, {5, -1, 2, 2}), InvalidArgument);
  CHECK_THROWS_AS(FrequencyVector::from_counts(layout, {1, 2, 3}), InvalidArgument);
  const FrequencyVector fv = FrequencyVector::from_counts(layout, {3, 1, 0, 8});
  CHECK(fv.values()(0) == 0.75);
  CHECK(fv.values()(3) == 1.0);
  CHECK(fv.shots() == std::vector<std::int64_t>{4, 8});
  RealVector bad(4);
  bad << 0.5, 0.4, 0.5, 0.5;
  CHECK_THROWS_AS(FrequencyVector::from_frequencies(layout, bad, {10, 10}), InvalidArgument);
}

TEST_CASE("moments from an explicit kernel, uniform single-qubit MUB data") {
  // T = pinv^T pinv for the 6x4 design; values from an independent
  // dense-matrix evaluation at N = 1e4
  const DesignModel m = mub1();
  const FrequencyVector f = freqs(m, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  const MomentEstimates g = moments(m, f, MomentMode::Gaussian);
  const MomentEstimates p = moments(m, f, MomentMode::LeadingOrder);
  CHECK(g.mean == doctest::Approx(7.5e-05).epsilon(1e-12));
  CHECK(g.variance == doctest::Approx(3.75e-09).epsilon(1e-12));
  CHECK(p.mean == doctest::Approx(8.3333333333333331e-05).epsilon(1e-12));
  CHECK(p.variance == doctest::Approx(7.4074074074074071e-10).epsilon(1e-12));
  // the leading-order mean is sum_i T_ii f_i / N with T_ii = 5/18
  CHECK(m.linear.gram().diagonal().cwiseAbs().minCoeff() == doctest::Approx(5.0 / 18));
}

TEST_CASE("moments for GHZ and |0> at exact probabilities") {
  const DesignModel m3 = build_design(mub_protocol(3, 10000), PauliBasis(3));
  const FrequencyVector f3 = FrequencyVector::from_frequencies(
      m3.linear.layout(), probabilities(*builtin_subject("ghz3").state, m3),
      std::vector<std::int64_t>(27, 10000));
  const MomentEstimates g = moments(m3, f3);
  CHECK(g.mean == doctest::Approx(5.0000000000000036e-05).epsilon(1e-11));
  CHECK(g.variance == doctest::Approx(1.2787744341563797e-10).epsilon(1e-11));
  const MomentEstimates p = moments(m3, f3, MomentMode::LeadingOrder);
  CHECK(p.mean == doctest::Approx(5.7870370370370284e-05).epsilon(1e-11));
  CHECK(p.variance == doctest::Approx(4.6625589670348808e-11).epsilon(1e-11));

  const DesignModel m = mub1();
  const MomentEstimates z = moments(m, freqs(m, {0.5, 0.5, 0.5, 0.5, 1, 0}));
  CHECK(z.mean == doctest::Approx(5.0e-05).epsilon(1e-12));
  CHECK(z.variance == doctest::Approx(2.5e-09).epsilon(1e-12));
}

TEST_CASE("gram and coordinate routes agree") {
  std::mt19937_64 rng(17);
  for (int q = 1; q <= 3; ++q) {
    const DesignModel m = build_design(mub_protocol(q, 1000), PauliBasis(q));
    const DensityMatrix rho = random_mixed_state(q, RngSeed{rng()});
    const FrequencyVector f = sample_counts(m.linear.layout(), probabilities(rho, m), 1000, RngSeed{rng()});
    const MomentEstimates a = moments(m, f);
    const MomentEstimates b = gaussian_moments_via_coordinates(m.linear, f.values(), f.shots());
    CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-11));
    CHECK(a.variance == doctest::Approx(b.variance).epsilon(1e-11));
  }
}

TEST_CASE("moment scaling with N") {
  const DesignModel m = mub1();
  const RealVector f = probabilities(builtin_subject("qubit-theta").state.value(), m);
  for (MomentMode mode : {MomentMode::Gaussian, MomentMode::LeadingOrder}) {
    const MomentEstimates a = moments(m.linear, f, {1000, 1000, 1000}, mode);
    const MomentEstimates b = moments(m.linear, f, {2000, 2000, 2000}, mode);
    CHECK(b.mean == doctest::Approx(a.mean / 2).epsilon(1e-13));
    CHECK(b.variance == doctest::Approx(a.variance / 4).epsilon(1e-13));
  }
}

TEST_CASE("degenerate data") {
  const DesignModel m = mub1();
  CHECK_THROWS_AS(moments(m, freqs(m, {1, 0, 0, 1, 1, 0})), DegenerateData);
  CHECK_THROWS_AS(moments(m, freqs(m, {1, 0, 0, 1, 1, 0}), MomentMode::LeadingOrder), DegenerateData);
  // a zero-count outcome in one block is fine
  CHECK_NOTHROW(moments(m, freqs(m, {1, 0, 0.5, 0.5, 1, 0})));
}

TEST_CASE("confidence level and radius") {
  const MomentEstimates mom{5e-5, 1.3e-10, MomentMode::Gaussian};
  CHECK(confidence_level(mom, 8, 0.0) == 0.0);
  CHECK(confidence_level(mom, 8, 10.0) == doctest::Approx(1.0));
  CHECK(confidence_radius(mom, 8, 0.0) == 0.0);
  double prev = 0.0;
  for (double c = 0.01; c < 0.999; c += 0.01) {
    const double delta = confidence_radius(mom, 8, c);
    CHECK(delta > prev);
    prev = delta;
    CHECK(std::abs(confidence_level(mom, 8, delta) - c) < 1e-9);
  }
  CHECK_THROWS_AS(confidence_radius(mom, 8, 1.0), InvalidArgument);
  CHECK_THROWS_AS(confidence_level(mom, 8, -1.0), InvalidArgument);
}

TEST_CASE("regions are self-consistent") {
  const MomentEstimates mom{5e-5, 1.3e-10, MomentMode::Gaussian};
  const ConfidenceRegion r = region_at_level(ket0().op, OperatorSpace::state(2), mom, 0.9);
  CHECK(std::abs(gamma_cdf(mom.gamma(), 2 * r.radius * r.radius / 2) - 0.9) < 1e-10);
  const ConfidenceRegion z = region_at_radius(ket0().op, OperatorSpace::state(2), mom, 0.0);
  CHECK(z.level == 0.0);
  CHECK(r.contains(ket0().op));
  CHECK_FALSE(r.contains(maximally_mixed(2).op));
  CHECK_THROWS_AS(region_at_level(ket0().op, OperatorSpace::state(4), mom, 0.9), InvalidArgument);
}

TEST_CASE("moment mode names") {
  CHECK(to_string(MomentMode::LeadingOrder) == "leading-order");
  CHECK(moment_mode_from_string("gaussian") == MomentMode::Gaussian);
  CHECK_THROWS_AS(moment_mode_from_string("exact"), InvalidArgument);
}
