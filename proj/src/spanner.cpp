#include "geopriv/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

#include "geopriv/errors.hpp"
#include "geopriv/kernels.hpp"

namespace geopriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack in the greedy comparison d_G > delta * d, so that exact
// shortcut paths (collinear points) are recognized through rounding.
constexpr double kTieTol = 1e-12;

kernels::Graph make_graph(int n, const std::vector<SpannerEdge>& edges) {
  kernels::Graph g;
  g.n = n;
  g.adj.assign(static_cast<std::size_t>(n), {});
  for (const SpannerEdge& e : edges) {
    g.adj[static_cast<std::size_t>(e.a)].push_back({e.b, e.weight});
    g.adj[static_cast<std::size_t>(e.b)].push_back({e.a, e.weight});
  }
  return g;
}

// Shortest path a -> b in the current partial graph, abandoning the search
// once every frontier label exceeds `limit`.
double bounded_distance(const kernels::Graph& g, int a, int b, double limit,
                        std::vector<double>& dist, std::vector<int>& touched) {
  for (int u : touched) dist[static_cast<std::size_t>(u)] = kInf;
  touched.clear();
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[static_cast<std::size_t>(a)] = 0.0;
  touched.push_back(a);
  heap.push({0.0, a});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    if (u == b) return d;
    if (d > limit) return kInf;
    for (auto [v, w] : g.adj[static_cast<std::size_t>(u)]) {
      const double nd = d + w;
      if (nd < dist[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(v)] == kInf) touched.push_back(v);
        dist[static_cast<std::size_t>(v)] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist[static_cast<std::size_t>(b)];
}

}  // namespace

Spanner::Spanner(LocationSet locs, std::vector<SpannerEdge> edges, double delta,
                 std::vector<double> apsp, double dilation)
    : locs_(std::move(locs)),
      edges_(std::move(edges)),
      delta_(delta),
      apsp_(std::move(apsp)),
      dilation_(dilation) {}

Spanner Spanner::from_edges(const LocationSet& locs, const Metric& dx,
                            std::vector<SpannerEdge> edges, double delta_requested) {
  const int n = locs.size();
  if (dx.size() != n) throw input_error("metric does not match the location set");
  if (!(delta_requested >= 1.0)) throw input_error("spanner dilation must be >= 1");
  for (SpannerEdge& e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a < 0 || e.b >= n || e.a == e.b) throw input_error("spanner edge index out of range");
    const double d = dx.at(e.a, e.b);
    if (std::abs(e.weight - d) > 1e-9)
      throw input_error("spanner edge weight must equal the metric distance");
    e.weight = d;  // keep weights exactly equal to the metric
  }

  std::vector<double> apsp = kernels::apsp_dijkstra(make_graph(n, edges));
  for (double v : apsp)
    if (v == kInf) throw invariant_error("spanner graph is disconnected");

  const auto stretch = kernels::max_stretch(apsp, dx);
  if (stretch.max_ratio > delta_requested + 1e-9)
    throw invariant_error("spanner dilation " + std::to_string(stretch.max_ratio) +
                          " exceeds requested " + std::to_string(delta_requested));
  // Lower-bound property of spanners: graph paths never undercut the metric.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (apsp[static_cast<std::size_t>(i) * n + j] < dx.at(i, j) - 1e-9)
        throw invariant_error("shortest path shorter than the metric distance");

  return Spanner(locs, std::move(edges), delta_requested, std::move(apsp), stretch.max_ratio);
}

Spanner get_spanner(const LocationSet& locs, const Metric& dx, double delta) {
  const int n = locs.size();
  if (dx.size() != n) throw input_error("metric does not match the location set");
  if (!(delta >= 1.0)) throw input_error("spanner dilation must be >= 1");

  struct Pair {
    double d;
    int a, b;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({dx.at(a, b), a, b});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
    if (p.d != q.d) return p.d < q.d;
    if (p.a != q.a) return p.a < q.a;
    return p.b < q.b;
  });

  kernels::Graph g;
  g.n = n;
  g.adj.assign(static_cast<std::size_t>(n), {});
  std::vector<SpannerEdge> edges;
  std::vector<double> dist(static_cast<std::size_t>(n), kInf);
  std::vector<int> touched;
  for (const Pair& p : pairs) {
    const double limit = delta * p.d * (1.0 + kTieTol);
    const double dg = bounded_distance(g, p.a, p.b, limit, dist, touched);
    if (dg > limit) {
      edges.push_back({p.a, p.b, p.d});
      g.adj[static_cast<std::size_t>(p.a)].push_back({p.b, p.d});
      g.adj[static_cast<std::size_t>(p.b)].push_back({p.a, p.d});
    }
  }
  return Spanner::from_edges(locs, dx, std::move(edges), delta);
}

int Spanner::max_degree() const {
  std::vector<int> deg(static_cast<std::size_t>(size()), 0);
  for (const SpannerEdge& e : edges_) {
    ++deg[static_cast<std::size_t>(e.a)];
    ++deg[static_cast<std::size_t>(e.b)];
  }
  int m = 0;
  for (int d : deg) m = std::max(m, d);
  return m;
}

double measured_dilation(const Spanner& s, const Metric& dx) {
  if (dx.size() != s.size()) throw input_error("metric does not match the spanner");
  return kernels::max_stretch(s.apsp(), dx).max_ratio;
}

const std::vector<double>& all_pairs_shortest_paths(const Spanner& s) { return s.apsp(); }

ConstraintCount constraint_count(const Spanner& s) {
  const long long n = s.size();
  const long long e = static_cast<long long>(s.edges().size());
  return {2 * e * n, n, n * n};
}

Metric induced_metric(const Spanner& s, double scale) {
  return Metric::graph_induced(s.apsp(), s.size(), scale);
}

}  // namespace geopriv
