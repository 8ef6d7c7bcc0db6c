#pragma once

#include <cstdint>
#include <vector>

#include "geopriv/geo.hpp"

// Data-parallel inner loops, each in two variants: an OpenMP one (default
// entry point used by the modules) and a serial reference twin used by the
// tests and the benchmark. Every pair is bit-identical by construction:
// work is split along a fixed axis (source node, matrix row, reported
// location), each slot is written by exactly one task, and reductions fold
// fixed-size partials in index order.

namespace geopriv::kernels {

struct Graph {
  int n = 0;
  // adj[u] = (v, weight) pairs, undirected edges stored both ways.
  std::vector<std::vector<std::pair<int, double>>> adj;
};

// All-pairs shortest paths, one Dijkstra per source. Disconnected pairs
// yield +infinity. Row-major n x n result.
std::vector<double> apsp_dijkstra(const Graph& g);
std::vector<double> apsp_dijkstra_serial(const Graph& g);
// Independent oracle (different algorithm) for tests.
std::vector<double> apsp_floyd_warshall(const Graph& g);

struct StretchResult {
  double max_ratio = 1.0;  // max over i != j of apsp[i][j] / base(i,j)
  int i = -1;
  int j = -1;
};
StretchResult max_stretch(const std::vector<double>& apsp, const Metric& base);
StretchResult max_stretch_serial(const std::vector<double>& apsp, const Metric& base);

struct PrivacyScanResult {
  double effective_epsilon = 0.0;  // may be +infinity
  int x = -1, xprime = -1, z = -1; // triple attaining it
  bool satisfied = true;           // k_xz <= e^{d(x,x')} k_x'z (1+slack) for all triples
};
// K row-major n x n; d is the (already scaled) distinguishability metric.
PrivacyScanResult privacy_scan(const double* K, const Metric& d, int n, double slack);
PrivacyScanResult privacy_scan_serial(const double* K, const Metric& d, int n, double slack);

// sum_{x,z} pi_x K[x][z] d(x,z), folded row-by-row in index order.
double expected_distance(const double* K, const double* pi, const Metric& d, int n);
double expected_distance_serial(const double* K, const double* pi, const Metric& d, int n);

// Same sum with columns rerouted through an assignment: d(x, assign[z]).
double expected_distance_assigned(const double* K, const double* pi, const Metric& d,
                                  const int* assign, int n);
double expected_distance_assigned_serial(const double* K, const double* pi, const Metric& d,
                                         const int* assign, int n);

// For each reported z: argmin over xh of sum_x pi_x K[x][z] d(x,xh),
// ties to the lowest index.
std::vector<int> best_remap(const double* K, const double* pi, const Metric& dA, int n);
std::vector<int> best_remap_serial(const double* K, const double* pi, const Metric& dA, int n);

// Row-stochastic matrix product K*H, n x n each.
std::vector<double> stochastic_product(const double* K, const double* H, int n);
std::vector<double> stochastic_product_serial(const double* K, const double* H, int n);

struct MetricCheckResult {
  bool ok = true;
  const char* violation = "";  // "symmetry" | "diagonal" | "positivity" | "triangle"
  int i = -1, j = -1, k = -1;
  double magnitude = 0.0;
};
// Validates an n x n matrix as a metric: exact symmetry, exact zero
// diagonal, positive off-diagonal, triangle inequality within tri_tol.
MetricCheckResult validate_metric(const double* D, int n, double tri_tol);
MetricCheckResult validate_metric_serial(const double* D, int n, double tri_tol);

// Discretized planar Laplace rows: per true location, `samples` draws of
// angle ~ Uniform[0,2pi) and radius ~ Gamma(2, 1/epsilon), snapped to the
// nearest point (ties to the lowest index); entries are empirical
// frequencies. Each row has its own derived RNG stream.
std::vector<double> planar_laplace_matrix(const std::vector<Point>& pts, double epsilon,
                                          std::uint64_t seed, int samples_per_location);
std::vector<double> planar_laplace_matrix_serial(const std::vector<Point>& pts, double epsilon,
                                                 std::uint64_t seed, int samples_per_location);

}  // namespace geopriv::kernels
