#include "geopriv/kernels.hpp"

#include "kernels_impl.hpp"

// Serial reference twins of the OpenMP kernels, kept for the equivalence
// tests and the benchmark. Same slot decomposition, same fold order.

namespace geopriv::kernels {

using namespace detail;

std::vector<double> apsp_dijkstra_serial(const Graph& g) {
  const int n = g.n;
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s) dijkstra_row(g, s, out.data() + static_cast<std::size_t>(s) * n);
  return out;
}

std::vector<double> apsp_floyd_warshall(const Graph& g) {
  const int n = g.n;
  std::vector<double> d(static_cast<std::size_t>(n) * n, kInf);
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0.0;
  for (int u = 0; u < n; ++u)
    for (auto [v, w] : g.adj[static_cast<std::size_t>(u)]) {
      auto& cell = d[static_cast<std::size_t>(u) * n + v];
      if (w < cell) cell = w;
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const double dik = d[static_cast<std::size_t>(i) * n + k];
      if (dik == kInf) continue;
      for (int j = 0; j < n; ++j) {
        const double via = dik + d[static_cast<std::size_t>(k) * n + j];
        auto& cell = d[static_cast<std::size_t>(i) * n + j];
        if (via < cell) cell = via;
      }
    }
  return d;
}

StretchResult max_stretch_serial(const std::vector<double>& apsp, const Metric& base) {
  const int n = base.size();
  StretchResult acc{0.0, -1, -1};
  StretchResult part;
  for (int i = 0; i < n; ++i) {
    stretch_row(apsp, base, n, i, part);
    stretch_combine(acc, part);
  }
  if (acc.max_ratio < 1.0) acc.max_ratio = 1.0;
  return acc;
}

PrivacyScanResult privacy_scan_serial(const double* K, const Metric& d, int n, double slack) {
  PrivacyScanResult acc{0.0, -1, -1, -1, true};
  PrivacyScanResult part;
  for (int x = 0; x < n; ++x) {
    privacy_row(K, d, n, slack, x, part);
    privacy_combine(acc, part);
  }
  return acc;
}

double expected_distance_serial(const double* K, const double* pi, const Metric& d, int n) {
  double acc = 0.0;
  for (int x = 0; x < n; ++x) acc += expdist_row(K, pi, d, n, x);
  return acc;
}

double expected_distance_assigned_serial(const double* K, const double* pi, const Metric& d,
                                         const int* assign, int n) {
  double acc = 0.0;
  for (int x = 0; x < n; ++x) acc += expdist_assigned_row(K, pi, d, assign, n, x);
  return acc;
}

std::vector<int> best_remap_serial(const double* K, const double* pi, const Metric& dA, int n) {
  std::vector<int> assign(static_cast<std::size_t>(n));
  for (int z = 0; z < n; ++z) assign[static_cast<std::size_t>(z)] = remap_column(K, pi, dA, n, z);
  return assign;
}

std::vector<double> stochastic_product_serial(const double* K, const double* H, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) product_row(K, H, n, x, out.data() + static_cast<std::size_t>(x) * n);
  return out;
}

MetricCheckResult validate_metric_serial(const double* D, int n, double tri_tol) {
  MetricCheckResult acc{};
  MetricCheckResult part;
  for (int i = 0; i < n; ++i) {
    metric_check_row(D, n, tri_tol, i, part);
    metric_check_combine(acc, part);
  }
  return acc;
}

std::vector<double> planar_laplace_matrix_serial(const std::vector<Point>& pts, double epsilon,
                                                 std::uint64_t seed, int samples_per_location) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    planar_laplace_row(pts, epsilon, seed, samples_per_location, x,
                       out.data() + static_cast<std::size_t>(x) * n);
  return out;
}

}  // namespace geopriv::kernels
