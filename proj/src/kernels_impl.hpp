#pragma once

// Per-slot work items shared by the OpenMP kernels and their serial
// reference twins. Both variants call exactly these routines with the same
// slot decomposition, which is what makes the pair bit-identical.

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "geopriv/geo.hpp"
#include "geopriv/kernels.hpp"
#include "geopriv/rng.hpp"

namespace geopriv::kernels::detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra from one source; writes row `dist` of length g.n.
inline void dijkstra_row(const Graph& g, int source, double* dist) {
  const int n = g.n;
  for (int i = 0; i < n; ++i) dist[i] = kInf;
  dist[source] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : g.adj[static_cast<std::size_t>(u)]) {
      const double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
}

// Max apsp/base ratio over pairs (i, j) for a fixed first index i.
inline void stretch_row(const std::vector<double>& apsp, const Metric& base, int n, int i,
                        StretchResult& out) {
  out = StretchResult{0.0, -1, -1};
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const double d = base.at(i, j);
    if (!(d > 0.0)) continue;
    const double ratio = apsp[static_cast<std::size_t>(i) * n + j] / d;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.i = i;
      out.j = j;
    }
  }
}

inline void stretch_combine(StretchResult& acc, const StretchResult& part) {
  if (part.max_ratio > acc.max_ratio) acc = part;
}

// Privacy scan for a fixed true location x against all x' != x and all z.
// Zero conventions: both entries zero contribute nothing; reporting
// probability that vanishes at x' but not at x makes the ratio infinite.
inline void privacy_row(const double* K, const Metric& d, int n, double slack, int x,
                        PrivacyScanResult& out) {
  out = PrivacyScanResult{0.0, -1, -1, -1, true};
  const double* kx = K + static_cast<std::size_t>(x) * n;
  for (int xp = 0; xp < n; ++xp) {
    if (xp == x) continue;
    const double dist = d.at(x, xp);
    if (!(dist > 0.0)) continue;
    const double* kxp = K + static_cast<std::size_t>(xp) * n;
    const double bound_factor = std::exp(dist) * (1.0 + slack);
    for (int z = 0; z < n; ++z) {
      const double a = kx[z];
      const double b = kxp[z];
      if (a == 0.0 && b == 0.0) continue;
      double eps;
      if (b == 0.0) {
        eps = kInf;
      } else {
        eps = std::log(a / b) / dist;
      }
      if (eps > out.effective_epsilon) {
        out.effective_epsilon = eps;
        out.x = x;
        out.xprime = xp;
        out.z = z;
      }
      if (!(a <= bound_factor * b)) out.satisfied = false;
    }
  }
}

inline void privacy_combine(PrivacyScanResult& acc, const PrivacyScanResult& part) {
  if (part.effective_epsilon > acc.effective_epsilon) {
    acc.effective_epsilon = part.effective_epsilon;
    acc.x = part.x;
    acc.xprime = part.xprime;
    acc.z = part.z;
  }
  acc.satisfied = acc.satisfied && part.satisfied;
}

inline double expdist_row(const double* K, const double* pi, const Metric& d, int n, int x) {
  const double* kx = K + static_cast<std::size_t>(x) * n;
  double acc = 0.0;
  for (int z = 0; z < n; ++z) acc += kx[z] * d.at(x, z);
  return pi[x] * acc;
}

inline double expdist_assigned_row(const double* K, const double* pi, const Metric& d,
                                   const int* assign, int n, int x) {
  const double* kx = K + static_cast<std::size_t>(x) * n;
  double acc = 0.0;
  for (int z = 0; z < n; ++z) acc += kx[z] * d.at(x, assign[z]);
  return pi[x] * acc;
}

// Best guess for one reported location z; ties to the lowest index.
inline int remap_column(const double* K, const double* pi, const Metric& dA, int n, int z) {
  int best = 0;
  double best_cost = kInf;
  for (int xh = 0; xh < n; ++xh) {
    double cost = 0.0;
    for (int x = 0; x < n; ++x)
      cost += pi[x] * K[static_cast<std::size_t>(x) * n + z] * dA.at(x, xh);
    if (cost < best_cost) {
      best_cost = cost;
      best = xh;
    }
  }
  return best;
}

inline void product_row(const double* K, const double* H, int n, int x, double* out_row) {
  const double* kx = K + static_cast<std::size_t>(x) * n;
  for (int xh = 0; xh < n; ++xh) {
    double acc = 0.0;
    for (int z = 0; z < n; ++z) acc += kx[z] * H[static_cast<std::size_t>(z) * n + xh];
    out_row[xh] = acc;
  }
}

// Metric checks for a fixed first index i. Symmetry and the zero diagonal
// must hold exactly; the triangle inequality within tri_tol.
inline void metric_check_row(const double* D, int n, double tri_tol, int i,
                             MetricCheckResult& out) {
  out = MetricCheckResult{};
  const double* di = D + static_cast<std::size_t>(i) * n;
  if (di[i] != 0.0) {
    out = {false, "diagonal", i, i, -1, di[i]};
    return;
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(di[j])) {
      out = {false, "positivity", i, j, -1, di[j]};
      return;
    }
    if (j != i && !(di[j] > 0.0)) {
      out = {false, "positivity", i, j, -1, di[j]};
      return;
    }
    if (di[j] != D[static_cast<std::size_t>(j) * n + i]) {
      out = {false, "symmetry", i, j, -1, di[j] - D[static_cast<std::size_t>(j) * n + i]};
      return;
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double slack = di[j] - (di[k] + D[static_cast<std::size_t>(k) * n + j]);
      if (slack > tri_tol) {
        out = {false, "triangle", i, j, k, slack};
        return;
      }
    }
  }
}

inline void metric_check_combine(MetricCheckResult& acc, const MetricCheckResult& part) {
  if (acc.ok && !part.ok) acc = part;
}

// One planar Laplace row: its own derived RNG stream, radius as the sum of
// two exponentials (Gamma with shape 2, scale 1/epsilon), snap to nearest.
inline void planar_laplace_row(const std::vector<Point>& pts, double epsilon, std::uint64_t seed,
                               int samples, int x, double* out_row) {
  const int n = static_cast<int>(pts.size());
  SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(x)));
  std::vector<long> counts(static_cast<std::size_t>(n), 0);
  const Point& origin = pts[static_cast<std::size_t>(x)];
  for (int s = 0; s < samples; ++s) {
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    const double u3 = rng.next_unit();
    const double radius = -std::log(u1 * u2) / epsilon;
    const double angle = 2.0 * 3.14159265358979323846 * u3;
    const double px = origin.x + radius * std::cos(angle);
    const double py = origin.y + radius * std::sin(angle);
    int best = 0;
    double best_d2 = kInf;
    for (int z = 0; z < n; ++z) {
      const double dx = pts[static_cast<std::size_t>(z)].x - px;
      const double dy = pts[static_cast<std::size_t>(z)].y - py;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = z;
      }
    }
    ++counts[static_cast<std::size_t>(best)];
  }
  for (int z = 0; z < n; ++z)
    out_row[z] = static_cast<double>(counts[static_cast<std::size_t>(z)]) / samples;
}

}  // namespace geopriv::kernels::detail
