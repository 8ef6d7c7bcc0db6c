#pragma once

#include <vector>

#include "geopriv/geo.hpp"

namespace geopriv {

struct SpannerEdge {
  int a = 0;
  int b = 0;           // a < b
  double weight = 0.0; // equals dX(a,b)
};

struct ConstraintCount {
  long long inequalities = 0;  // 2 * |E| * n, both orientations of each edge
  long long equalities = 0;    // n
  long long variables = 0;     // n^2
};

// Undirected weighted graph over a LocationSet whose edge weights equal the
// base metric, with cached all-pairs shortest paths. Connected by
// construction; measured dilation <= delta_requested + 1e-9.
class Spanner {
 public:
  // Validates every invariant; throws invariant_error on a disconnected
  // graph or a dilation above delta_requested, input_error on bad edges.
  static Spanner from_edges(const LocationSet& locs, const Metric& dx,
                            std::vector<SpannerEdge> edges, double delta_requested);

  const LocationSet& locations() const { return locs_; }
  const std::vector<SpannerEdge>& edges() const { return edges_; }
  double delta_requested() const { return delta_; }
  const std::vector<double>& apsp() const { return apsp_; }
  double dilation() const { return dilation_; }
  int max_degree() const;
  int size() const { return locs_.size(); }

 private:
  Spanner(LocationSet locs, std::vector<SpannerEdge> edges, double delta,
          std::vector<double> apsp, double dilation);

  LocationSet locs_;
  std::vector<SpannerEdge> edges_;
  double delta_;
  std::vector<double> apsp_;
  double dilation_;
};

// Greedy spanner construction: scan all unordered pairs in ascending dX
// order (ties by lexicographic index pair) and add the edge whenever the
// current graph distance exceeds delta * dX.
Spanner get_spanner(const LocationSet& locs, const Metric& dx, double delta);

// max over i != j of shortest-path(i,j) / dx(i,j).
double measured_dilation(const Spanner& s, const Metric& dx);

// Cached shortest-path matrix (row-major n x n, kilometers).
const std::vector<double>& all_pairs_shortest_paths(const Spanner& s);

ConstraintCount constraint_count(const Spanner& s);

// The graph-induced metric d_G as a Metric (shortest-path weights).
Metric induced_metric(const Spanner& s, double scale = 1.0);

}  // namespace geopriv
