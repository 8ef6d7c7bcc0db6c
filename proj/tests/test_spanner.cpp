#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "geopriv/errors.hpp"
#include "geopriv/spanner.hpp"
#include "support/helpers.hpp"

using namespace geopriv;

namespace {
bool has_edge(const Spanner& s, int a, int b) {
  if (a > b) std::swap(a, b);
  for (const SpannerEdge& e : s.edges())
    if (e.a == a && e.b == b) return true;
  return false;
}
}  // namespace

TEST_SUITE("spanner") {

TEST_CASE("three collinear points at delta = 1 keep only the short edges") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  const Spanner s = get_spanner(locs, Metric::euclidean(locs), 1.0);
  REQUIRE(s.edges().size() == 2);
  CHECK(has_edge(s, 0, 1));
  CHECK(has_edge(s, 1, 2));
  CHECK_FALSE(has_edge(s, 0, 2));
  CHECK(s.dilation() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unit square at delta = 1.5: sides only, dilation sqrt(2)") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const Spanner s = get_spanner(locs, Metric::euclidean(locs), 1.5);
  CHECK(s.edges().size() == 4);
  CHECK_FALSE(has_edge(s, 0, 3));
  CHECK_FALSE(has_edge(s, 1, 2));
  CHECK(s.dilation() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(measured_dilation(s, Metric::euclidean(locs)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("general position at delta = 1 gives the complete graph") {
  const auto inst = testsupport::random_instance(101, 9);
  const Spanner s = get_spanner(inst.locs, Metric::euclidean(inst.locs), 1.0);
  CHECK(static_cast<int>(s.edges().size()) == 9 * 8 / 2);
  CHECK(s.dilation() == doctest::Approx(1.0));
}

TEST_CASE("delta below one is rejected") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
  CHECK_THROWS_AS(get_spanner(locs, Metric::euclidean(locs), 0.99), input_error);
}

TEST_CASE("apsp of a single node") {
  const LocationSet locs({{0.0, 0.0}});
  const Spanner s = get_spanner(locs, Metric::euclidean(locs), 2.0);
  REQUIRE(all_pairs_shortest_paths(s).size() == 1);
  CHECK(all_pairs_shortest_paths(s)[0] == 0.0);
  CHECK(measured_dilation(s, Metric::euclidean(locs)) == 1.0);
}

TEST_CASE("apsp on a path graph") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  const Metric dx = Metric::euclidean(locs);
  const Spanner s = Spanner::from_edges(locs, dx, {{0, 1, 1.0}, {1, 2, 1.0}}, 1.0);
  const auto& d = all_pairs_shortest_paths(s);
  CHECK(d[0 * 3 + 2] == 2.0);
  CHECK(d[2 * 3 + 0] == 2.0);
  CHECK(d[1 * 3 + 1] == 0.0);
}

TEST_CASE("from_edges rejects disconnected graphs") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {5.0, 0.0}});
  const Metric dx = Metric::euclidean(locs);
  CHECK_THROWS_AS(Spanner::from_edges(locs, dx, {{0, 1, 1.0}}, 100.0), invariant_error);
}

TEST_CASE("from_edges rejects wrong weights and overclaimed dilation") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  const Metric dx = Metric::euclidean(locs);
  CHECK_THROWS_AS(Spanner::from_edges(locs, dx, {{0, 1, 1.5}, {1, 2, 1.0}}, 2.0), input_error);
  // path has dilation 1 on collinear points; claiming delta=1 is fine
  CHECK_NOTHROW(Spanner::from_edges(locs, dx, {{0, 1, 1.0}, {1, 2, 1.0}}, 1.0));
  // a single long detour on a square exceeds delta=1
  const LocationSet sq({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const Metric dsq = Metric::euclidean(sq);
  CHECK_THROWS_AS(
      Spanner::from_edges(sq, dsq, {{0, 1, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}, {0, 2, 1.0}}, 1.0),
      invariant_error);
}

TEST_CASE("complete graph apsp equals the metric pointwise") {
  const auto inst = testsupport::random_instance(77, 8);
  const Metric dx = Metric::euclidean(inst.locs);
  const Spanner s = get_spanner(inst.locs, dx, 1.0);
  const auto& d = all_pairs_shortest_paths(s);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(d[i * 8 + j] == doctest::Approx(dx.at(i, j)).epsilon(1e-12));
}

TEST_CASE("dilation and lower-bound invariants over random instances") {
  for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
    const auto inst = testsupport::random_instance(seed, 14);
    const Metric dx = Metric::euclidean(inst.locs);
    for (double delta : {1.0, 1.1, 1.5, 2.0}) {
      const Spanner s = get_spanner(inst.locs, dx, delta);
      const auto& d = all_pairs_shortest_paths(s);
      const int n = s.size();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i != j) CHECK(d[i * n + j] <= delta * dx.at(i, j) + 1e-9);
          CHECK(d[i * n + j] >= dx.at(i, j) - 1e-9);
        }
    }
  }
}

TEST_CASE("edge count is non-increasing in delta") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const auto inst = testsupport::random_instance(seed, 16);
    const Metric dx = Metric::euclidean(inst.locs);
    std::size_t prev = SIZE_MAX;
    for (double delta : {1.0, 1.05, 1.2, 1.5, 2.0}) {
      const Spanner s = get_spanner(inst.locs, dx, delta);
      CHECK(s.edges().size() <= prev);
      prev = s.edges().size();
    }
  }
}

TEST_CASE("max degree trend over 20 seeded instances: non-increasing in delta") {
  double mean_degree[3] = {0.0, 0.0, 0.0};
  const double deltas[3] = {1.1, 1.5, 2.0};
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    const auto inst = testsupport::random_instance(seed, 24);
    const Metric dx = Metric::euclidean(inst.locs);
    for (int t = 0; t < 3; ++t)
      mean_degree[t] += get_spanner(inst.locs, dx, deltas[t]).max_degree();
  }
  CHECK(mean_degree[0] >= mean_degree[1]);
  CHECK(mean_degree[1] >= mean_degree[2]);
}

TEST_CASE("constraint counts") {
  SUBCASE("two locations, one edge") {
    const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}});
    const Spanner s = get_spanner(locs, Metric::euclidean(locs), 1.0);
    REQUIRE(s.edges().size() == 1);
    const auto c = constraint_count(s);
    CHECK(c.inequalities == 4);
    CHECK(c.equalities == 2);
    CHECK(c.variables == 4);
  }
  SUBCASE("50 locations, complete graph") {
    const auto inst = testsupport::random_instance(41, 50);
    const Spanner s = get_spanner(inst.locs, Metric::euclidean(inst.locs), 1.0);
    REQUIRE(s.edges().size() == 1225);
    const auto c = constraint_count(s);
    CHECK(c.inequalities == 122500);
    CHECK(c.equalities == 50);
    CHECK(c.variables == 2500);
  }
  SUBCASE("3-node path") {
    const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
    const Spanner s = get_spanner(locs, Metric::euclidean(locs), 1.0);
    REQUIRE(s.edges().size() == 2);
    const auto c = constraint_count(s);
    CHECK(c.inequalities == 12);
    CHECK(c.equalities == 3);
    CHECK(c.variables == 9);
  }
}

TEST_CASE("induced metric matches apsp and validates as a metric") {
  const LocationSet locs({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  const Spanner s = get_spanner(locs, Metric::euclidean(locs), 1.0);
  const Metric dg = induced_metric(s);
  CHECK(dg.distance(0, 2) == 2.0);
  CHECK(dg.kind() == MetricKind::graph_induced);
}

}  // TEST_SUITE
