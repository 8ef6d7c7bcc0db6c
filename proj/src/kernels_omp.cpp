#include "geopriv/kernels.hpp"

#include "kernels_impl.hpp"

namespace geopriv::kernels {

using namespace detail;

std::vector<double> apsp_dijkstra(const Graph& g) {
  const int n = g.n;
  std::vector<double> out(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n; ++s) dijkstra_row(g, s, out.data() + static_cast<std::size_t>(s) * n);
  return out;
}

StretchResult max_stretch(const std::vector<double>& apsp, const Metric& base) {
  const int n = base.size();
  std::vector<StretchResult> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) stretch_row(apsp, base, n, i, parts[static_cast<std::size_t>(i)]);
  StretchResult acc{0.0, -1, -1};
  for (int i = 0; i < n; ++i) stretch_combine(acc, parts[static_cast<std::size_t>(i)]);
  if (acc.max_ratio < 1.0) acc.max_ratio = 1.0;  // direct edges only, ratio floor
  return acc;
}

PrivacyScanResult privacy_scan(const double* K, const Metric& d, int n, double slack) {
  std::vector<PrivacyScanResult> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int x = 0; x < n; ++x) privacy_row(K, d, n, slack, x, parts[static_cast<std::size_t>(x)]);
  PrivacyScanResult acc{0.0, -1, -1, -1, true};
  for (int x = 0; x < n; ++x) privacy_combine(acc, parts[static_cast<std::size_t>(x)]);
  return acc;
}

double expected_distance(const double* K, const double* pi, const Metric& d, int n) {
  std::vector<double> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int x = 0; x < n; ++x) parts[static_cast<std::size_t>(x)] = expdist_row(K, pi, d, n, x);
  double acc = 0.0;
  for (int x = 0; x < n; ++x) acc += parts[static_cast<std::size_t>(x)];
  return acc;
}

double expected_distance_assigned(const double* K, const double* pi, const Metric& d,
                                  const int* assign, int n) {
  std::vector<double> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int x = 0; x < n; ++x)
    parts[static_cast<std::size_t>(x)] = expdist_assigned_row(K, pi, d, assign, n, x);
  double acc = 0.0;
  for (int x = 0; x < n; ++x) acc += parts[static_cast<std::size_t>(x)];
  return acc;
}

std::vector<int> best_remap(const double* K, const double* pi, const Metric& dA, int n) {
  std::vector<int> assign(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int z = 0; z < n; ++z) assign[static_cast<std::size_t>(z)] = remap_column(K, pi, dA, n, z);
  return assign;
}

std::vector<double> stochastic_product(const double* K, const double* H, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(static)
  for (int x = 0; x < n; ++x) product_row(K, H, n, x, out.data() + static_cast<std::size_t>(x) * n);
  return out;
}

MetricCheckResult validate_metric(const double* D, int n, double tri_tol) {
  std::vector<MetricCheckResult> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) metric_check_row(D, n, tri_tol, i, parts[static_cast<std::size_t>(i)]);
  MetricCheckResult acc{};
  for (int i = 0; i < n; ++i) metric_check_combine(acc, parts[static_cast<std::size_t>(i)]);
  return acc;
}

std::vector<double> planar_laplace_matrix(const std::vector<Point>& pts, double epsilon,
                                          std::uint64_t seed, int samples_per_location) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> out(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(dynamic)
  for (int x = 0; x < n; ++x)
    planar_laplace_row(pts, epsilon, seed, samples_per_location, x,
                       out.data() + static_cast<std::size_t>(x) * n);
  return out;
}

}  // namespace geopriv::kernels
