#include <doctest.h>

#include <cmath>
#include <limits>

#include "geopriv/errors.hpp"
#include "geopriv/eval.hpp"
#include "support/helpers.hpp"

using namespace geopriv;

namespace {

const double kE = std::exp(1.0);

Mechanism identity_mechanism(const LocationSet& locs) {
  const int n = locs.size();
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1.0;
  return Mechanism(locs, std::move(m), Provenance{});
}

Mechanism uniform_rows_mechanism(const LocationSet& locs) {
  const int n = locs.size();
  return Mechanism(locs, std::vector<double>(static_cast<std::size_t>(n) * n, 1.0 / n),
                   Provenance{});
}

// Closed-form optimal two-point mechanism at eps*d = 1.
Mechanism two_point_optimal(const LocationSet& locs) {
  const double a = kE / (1.0 + kE), b = 1.0 / (1.0 + kE);
  return Mechanism(locs, {a, b, b, a}, Provenance{});
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("quality loss of the identity is zero") {
  const auto inst = testsupport::random_instance(81, 7);
  const Metric d = Metric::euclidean(inst.locs);
  CHECK(quality_loss(identity_mechanism(inst.locs), inst.prior, d) == 0.0);
}

TEST_CASE("quality loss of the closed-form two-point optimum") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  const Metric d = Metric::euclidean(locs);
  CHECK(quality_loss(two_point_optimal(locs), Prior::uniform(2), d) ==
        doctest::Approx(1.0 / (1.0 + kE)).epsilon(1e-12));
}

TEST_CASE("quality loss of uniform rows on the unit square") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const Metric d = Metric::euclidean(locs);
  CHECK(quality_loss(uniform_rows_mechanism(locs), Prior::uniform(4), d) ==
        doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatches are rejected") {
  const auto inst = testsupport::random_instance(82, 4);
  const Metric d = Metric::euclidean(inst.locs);
  CHECK_THROWS_AS(quality_loss(identity_mechanism(inst.locs), Prior::uniform(5), d), input_error);
}

TEST_CASE("optimal remap under a point-mass prior guesses the support point") {
  const auto inst = testsupport::random_instance(83, 5);
  const Metric d = Metric::euclidean(inst.locs);
  std::vector<double> w(5, 0.0);
  w[2] = 1.0;
  const Prior pi(w);
  // every report is reachable here, so every guess lands on the support
  const Remapping h = optimal_remap(uniform_rows_mechanism(inst.locs), pi, d);
  for (int z = 0; z < 5; ++z) CHECK(h.assignment()[static_cast<std::size_t>(z)] == 2);
  // with the identity mechanism, unreachable reports tie at zero cost and
  // the lowest index wins; the reachable one still maps to the support
  const Remapping hi = optimal_remap(identity_mechanism(inst.locs), pi, d);
  CHECK(hi.assignment()[2] == 2);
  CHECK(adv_error(identity_mechanism(inst.locs), pi, d) == 0.0);
}

TEST_CASE("optimal remap of the two-point optimum is the identity") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  const Metric d = Metric::euclidean(locs);
  const Remapping h = optimal_remap(two_point_optimal(locs), Prior::uniform(2), d);
  CHECK(h.assignment()[0] == 0);
  CHECK(h.assignment()[1] == 1);
}

TEST_CASE("column-constant mechanism remaps every report to one point") {
  const auto inst = testsupport::random_instance(84, 6);
  const Metric d = Metric::euclidean(inst.locs);
  const Mechanism m = uniform_rows_mechanism(inst.locs);
  const Remapping h = optimal_remap(m, inst.prior, d);
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int xh = 0; xh < 6; ++xh) {
    double c = 0.0;
    for (int x = 0; x < 6; ++x) c += inst.prior.at(x) * d.at(x, xh);
    if (c < best_cost) {
      best_cost = c;
      best = xh;
    }
  }
  for (int z = 0; z < 6; ++z) CHECK(h.assignment()[static_cast<std::size_t>(z)] == best);
}

TEST_CASE("adversary error examples") {
  SUBCASE("point-mass prior: zero error for any mechanism") {
    const auto inst = testsupport::random_instance(85, 4);
    const Metric d = Metric::euclidean(inst.locs);
    std::vector<double> w(4, 0.0);
    w[1] = 1.0;
    CHECK(adv_error(uniform_rows_mechanism(inst.locs), Prior(w), d) ==
          doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("uniform rows over two points at distance d: best constant guess errs d/2") {
    const LocationSet locs({{0.0, 0.0}, {3.0, 0.0}});
    const Metric d = Metric::euclidean(locs);
    CHECK(adv_error(uniform_rows_mechanism(locs), Prior::uniform(2), d) ==
          doctest::Approx(1.5).epsilon(1e-12));
  }
}

TEST_CASE("adv_error never exceeds the unremapped expected distance") {
  for (std::uint64_t seed : {86u, 87u, 88u}) {
    const auto inst = testsupport::random_instance(seed, 8);
    const Metric d = Metric::euclidean(inst.locs);
    const Mechanism m = build_exponential(inst.locs, d, 1.0);
    CHECK(adv_error(m, inst.prior, d) <= expected_distance(m, inst.prior, d) + 1e-12);
  }
}

TEST_CASE("theorem-2 behaviour: optql adversary error equals its quality loss") {
  const auto inst = testsupport::random_instance(89, 6);
  const Metric d = Metric::euclidean(inst.locs);
  const Mechanism k = build_optql_exact(inst.locs, d, 1.07, inst.prior, d);
  CHECK(std::abs(adv_error(k, inst.prior, d) - quality_loss(k, inst.prior, d)) <= 1e-6);
}

TEST_CASE("compose: identity remapping and identity mechanism") {
  const auto inst = testsupport::random_instance(90, 5);
  const Metric d = Metric::euclidean(inst.locs);
  const Mechanism k = build_exponential(inst.locs, d, 1.5);
  std::vector<int> ident(5);
  for (int i = 0; i < 5; ++i) ident[static_cast<std::size_t>(i)] = i;
  const Mechanism kh = compose(k, Remapping::deterministic(ident, 5));
  for (int x = 0; x < 5; ++x)
    for (int z = 0; z < 5; ++z) CHECK(kh.at(x, z) == doctest::Approx(k.at(x, z)).epsilon(1e-15));

  const auto h = testsupport::random_stochastic_matrix(91, 5);
  const Mechanism ih = compose(identity_mechanism(inst.locs), Remapping(h, 5));
  for (int x = 0; x < 5; ++x)
    for (int z = 0; z < 5; ++z)
      CHECK(ih.at(x, z) == doctest::Approx(h[static_cast<std::size_t>(x) * 5 + z]).epsilon(1e-15));
}

TEST_CASE("lemma-1 behaviour: remapping preserves the privacy level") {
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    const auto inst = testsupport::random_instance(seed, 7);
    const Metric d = Metric::euclidean(inst.locs);
    const Mechanism k = build_exponential(inst.locs, d, 1.3);
    const Remapping h(testsupport::random_stochastic_matrix(seed * 7 + 1, 7), 7);
    const Mechanism kh = compose(k, h);
    CHECK(verify_dx_privacy(kh, d.scaled_by(1.3), 1e-9).satisfied_at);
  }
}

TEST_CASE("optimal remap beats random remappings and matches the exhaustive oracle") {
  const auto inst = testsupport::random_instance(92, 5);
  const Metric d = Metric::euclidean(inst.locs);
  const Mechanism m = build_exponential(inst.locs, d, 0.8);
  const double best = adv_error(m, inst.prior, d);
  for (std::uint64_t seed = 400; seed < 420; ++seed) {
    const Remapping h(testsupport::random_stochastic_matrix(seed, 5), 5);
    CHECK(best <= expected_distance(compose(m, h), inst.prior, d) + 1e-12);
  }
  const auto oracle =
      testsupport::exhaustive_remap_oracle(m.matrix().data(), inst.prior.data(), d, 5);
  CHECK(best == oracle.min_value);
  CHECK(optimal_remap(m, inst.prior, d).assignment() == oracle.argmin);
}

TEST_CASE("verify_dx_privacy: uniform rows have zero effective epsilon") {
  const auto inst = testsupport::random_instance(93, 6);
  const Metric d = Metric::euclidean(inst.locs);
  const auto report = verify_dx_privacy(uniform_rows_mechanism(inst.locs), d.scaled_by(1.0));
  CHECK(report.effective_epsilon == 0.0);
  CHECK(report.satisfied_at);
}

TEST_CASE("verify_dx_privacy: the identity mechanism is infinitely distinguishing") {
  const auto inst = testsupport::random_instance(94, 4);
  const Metric d = Metric::euclidean(inst.locs);
  const auto report = verify_dx_privacy(identity_mechanism(inst.locs), d.scaled_by(5.0));
  CHECK(std::isinf(report.effective_epsilon));
  CHECK_FALSE(report.satisfied_at);
  CHECK(report.worst_triple.x >= 0);
}

TEST_CASE("verify_dx_privacy: closed-form optimum is tight at epsilon = 1") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  const Metric d = Metric::euclidean(locs);
  const auto report = verify_dx_privacy(two_point_optimal(locs), d);
  CHECK(report.effective_epsilon == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.satisfied_at);  // within the 1e-6 slack
}

TEST_CASE("remapping validation") {
  CHECK_THROWS_AS(Remapping({0.5, 0.6, 0.5, 0.5}, 2), invariant_error);
  CHECK_THROWS_AS(Remapping::deterministic({0, 3}, 2), input_error);
}

}  // TEST_SUITE
