#include <doctest.h>

#include <cmath>
#include <cstring>

#include "geopriv/errors.hpp"
#include "geopriv/eval.hpp"
#include "geopriv/mech.hpp"
#include "support/helpers.hpp"

using namespace geopriv;

namespace {
const double kE = std::exp(1.0);
}

TEST_SUITE("mech") {

TEST_CASE("optql-exact on the symmetric two-point instance") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  const Metric d = Metric::euclidean(locs);
  BuildStats stats;
  const Mechanism k = build_optql_exact(locs, d, 1.0, Prior::uniform(2), d, &stats);
  CHECK(stats.objective == doctest::Approx(1.0 / (1.0 + kE)).epsilon(1e-7));
  CHECK(k.at(0, 0) == doctest::Approx(kE / (1.0 + kE)).epsilon(1e-7));
  CHECK(k.at(0, 1) == doctest::Approx(1.0 / (1.0 + kE)).epsilon(1e-7));
  CHECK(k.at(1, 0) == doctest::Approx(1.0 / (1.0 + kE)).epsilon(1e-7));
  CHECK(k.at(1, 1) == doctest::Approx(kE / (1.0 + kE)).epsilon(1e-7));
  CHECK(k.provenance().kind == MechanismKind::optql_exact);
}

TEST_CASE("optql-exact with a point-mass prior has zero quality loss") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  const Metric d = Metric::euclidean(locs);
  const Mechanism k = build_optql_exact(locs, d, 1.0, Prior({1.0, 0.0}), d);
  CHECK(quality_loss(k, Prior({1.0, 0.0}), d) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("optql-exact at huge epsilon approaches the identity") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  const Metric d = Metric::euclidean(locs);
  const Prior pi = Prior::uniform(2);
  const Mechanism k = build_optql_exact(locs, d, 50.0, pi, d);
  CHECK(k.at(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(k.at(1, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(quality_loss(k, pi, d) <= 1e-6);
}

TEST_CASE("optql-spanner at delta = 1 matches the exact objective") {
  const auto inst = testsupport::random_instance(51, 7);
  const Metric d = Metric::euclidean(inst.locs);
  BuildStats exact_stats, spanner_stats;
  build_optql_exact(inst.locs, d, 1.07, inst.prior, d, &exact_stats);
  build_optql_spanner(inst.locs, d, 1.07, 1.0, inst.prior, d, &spanner_stats);
  CHECK(spanner_stats.objective == doctest::Approx(exact_stats.objective).epsilon(1e-7));
}

TEST_CASE("optql-spanner passes the full exact privacy check") {
  for (std::uint64_t seed : {53u, 54u}) {
    const auto inst = testsupport::random_instance(seed, 8);
    const Metric d = Metric::euclidean(inst.locs);
    for (double delta : {1.05, 1.5}) {
      const Mechanism k = build_optql_spanner(inst.locs, d, 1.07, delta, inst.prior, d);
      const auto report = verify_dx_privacy(k, d.scaled_by(1.07), 1e-6);
      CHECK(report.satisfied_at);
    }
  }
}

TEST_CASE("optql QL is non-increasing in epsilon") {
  const auto inst = testsupport::random_instance(57, 6);
  const Metric d = Metric::euclidean(inst.locs);
  double prev = 1e100;
  for (double eps : {0.5, 1.07, 2.0, 4.0}) {
    BuildStats stats;
    build_optql_exact(inst.locs, d, eps, inst.prior, d, &stats);
    CHECK(stats.objective <= prev + 1e-7);
    prev = stats.objective;
  }
}

TEST_CASE("on a fixed edge set, QL is non-decreasing in the dilation scale") {
  const auto inst = testsupport::random_instance(59, 7);
  const Metric d = Metric::euclidean(inst.locs);
  const Spanner base = get_spanner(inst.locs, d, 1.4);
  double prev = -1.0;
  for (double delta : {1.4, 1.7, 2.2}) {
    const Spanner s = Spanner::from_edges(inst.locs, d, base.edges(), delta);
    const LpSolution sol = solve(build_primal_spanner(inst.locs, s, 1.07, delta, inst.prior, d));
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective_value >= prev - 1e-9);
    prev = sol.objective_value;
  }
}

TEST_CASE("planar laplace: single location is the identity") {
  const LocationSet locs({{3.0, 4.0}});
  const Mechanism k = build_planar_laplace(locs, 0.5, 7, 10000);
  CHECK(k.at(0, 0) == 1.0);
}

TEST_CASE("planar laplace: staying on the true side of the midplane is likelier") {
  const LocationSet locs({{-1.0, 0.0}, {1.0, 0.0}});
  const Mechanism k = build_planar_laplace(locs, 1.0, 11, 50000);
  CHECK(k.at(0, 0) > 0.5);
  CHECK(k.at(1, 1) > 0.5);
}

TEST_CASE("planar laplace rows are exact frequencies") {
  const auto inst = testsupport::random_instance(61, 5);
  const Mechanism k = build_planar_laplace(inst.locs, 1.3, 13, 10000);
  for (int x = 0; x < k.size(); ++x) {
    double sum = 0.0;
    for (int z = 0; z < k.size(); ++z) sum += k.at(x, z);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("planar laplace is deterministic given the seed") {
  const auto inst = testsupport::random_instance(63, 4);
  const Mechanism a = build_planar_laplace(inst.locs, 1.0, 99, 10000);
  const Mechanism b = build_planar_laplace(inst.locs, 1.0, 99, 10000);
  CHECK(std::memcmp(a.matrix().data(), b.matrix().data(),
                    a.matrix().size() * sizeof(double)) == 0);
  const Mechanism c = build_planar_laplace(inst.locs, 1.0, 100, 10000);
  CHECK(std::memcmp(a.matrix().data(), c.matrix().data(),
                    a.matrix().size() * sizeof(double)) != 0);
}

TEST_CASE("planar laplace rejects tiny sample counts") {
  const LocationSet locs({{0.0, 0.0}});
  CHECK_THROWS_AS(build_planar_laplace(locs, 1.0, 1, 100), input_error);
}

TEST_CASE("calibration: hitting a reproducible target recovers epsilon") {
  const auto inst = testsupport::random_instance(65, 6);
  const Metric d = Metric::euclidean(inst.locs);
  const Mechanism ref = build_planar_laplace(inst.locs, 1.0, 17, 20000);
  const double target = quality_loss(ref, inst.prior, d);
  const Calibration cal =
      calibrate_planar_laplace(inst.locs, inst.prior, d, target, 0.01 * target, 17, 20000);
  CHECK(cal.epsilon_prime == doctest::Approx(1.0).epsilon(0.15));
  CHECK(std::abs(cal.achieved_ql - target) <= 0.01 * target);
  CHECK(cal.mechanism.provenance().kind == MechanismKind::planar_laplace);
}

TEST_CASE("calibration: unreachable target reports the attainable range") {
  const auto inst = testsupport::random_instance(67, 5);
  const Metric d = Metric::euclidean(inst.locs);
  CHECK_THROWS_AS(
      calibrate_planar_laplace(inst.locs, inst.prior, d, 1e-12, 1e-13, 19, 10000),
      solver_error);
}

TEST_CASE("planar laplace QL decreases as epsilon grows (common seed)") {
  const auto inst = testsupport::random_instance(69, 6);
  const Metric d = Metric::euclidean(inst.locs);
  const double lo = quality_loss(build_planar_laplace(inst.locs, 0.5, 23, 20000), inst.prior, d);
  const double hi = quality_loss(build_planar_laplace(inst.locs, 2.0, 23, 20000), inst.prior, d);
  CHECK(lo >= hi);
}

TEST_CASE("exponential baseline: closed form and privacy") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  const Metric d = Metric::euclidean(locs);
  const Mechanism k = build_exponential(locs, d, 2.0);
  CHECK(k.at(0, 1) == doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-12));
  for (std::uint64_t seed : {71u, 72u}) {
    const auto inst = testsupport::random_instance(seed, 9);
    const Metric dn = Metric::euclidean(inst.locs);
    const Mechanism m = build_exponential(inst.locs, dn, 1.07);
    CHECK(verify_dx_privacy(m, dn.scaled_by(1.07), 1e-9).satisfied_at);
  }
}

TEST_CASE("obfuscate: deterministic rows and empirical frequencies") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  Provenance prov;
  const Mechanism identity(locs, {1.0, 0.0, 0.0, 1.0}, prov);
  CHECK(obfuscate(identity, 0, 5) == 0);
  CHECK(obfuscate(identity, 1, 5) == 1);
  const Mechanism flip(locs, {0.0, 1.0, 1.0, 0.0}, prov);
  CHECK(obfuscate(flip, 0, 5) == 1);

  const Mechanism biased(locs, {0.25, 0.75, 0.6, 0.4}, prov);
  int hits = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    if (obfuscate(biased, 0, 1000 + static_cast<std::uint64_t>(i)) == 1) ++hits;
  const double p = 0.75;
  const double sigma = std::sqrt(p * (1 - p) / draws);
  CHECK(std::abs(hits / static_cast<double>(draws) - p) <= 3.0 * sigma);
}

TEST_CASE("mechanism validation rejects broken matrices") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  Provenance prov;
  CHECK_THROWS_AS(Mechanism(locs, {0.5, 0.6, 0.5, 0.5}, prov), invariant_error);
  CHECK_THROWS_AS(Mechanism(locs, {-0.1, 1.1, 0.5, 0.5}, prov), invariant_error);
  CHECK_THROWS_AS(Mechanism(locs, {1.0, 0.0}, prov), input_error);
}

}  // TEST_SUITE
