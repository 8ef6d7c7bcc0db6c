#pragma once

#include <memory>
#include <string>
#include <vector>

namespace geopriv {

// Planar coordinates in kilometers (x east, y north).
struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Ordered finite set of distinct planar points. The index order is the
// canonical order for every matrix and vector downstream.
class LocationSet {
 public:
  explicit LocationSet(std::vector<Point> points, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(points_.size()); }
  const Point& point(int i) const;
  const std::vector<Point>& points() const { return points_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Label if present, otherwise "L<i>".
  std::string label_or_index(int i) const;

 private:
  std::vector<Point> points_;
  std::vector<std::string> labels_;
};

struct GridSpec {
  Point origin;
  double cell_width = 0.0;   // km
  double cell_height = 0.0;  // km
  int columns = 0;
  int rows = 0;
};

// Equirectangular projection around a reference point, R = 6371 km.
// Deterministic plumbing between GPS coordinates and the planar metric grid.
Point project(double lat, double lon, double ref_lat, double ref_lon);

// Centers of all rows x columns cells, ordered row-major:
// center of cell (r,c) = origin + ((c+0.5)*cell_width, (r+0.5)*cell_height).
LocationSet build_grid(const GridSpec& spec);

enum class MetricKind { euclidean, graph_induced, explicit_matrix };

// Distance function over a LocationSet, times a positive multiplicative
// scale. scale is how the privacy parameter epsilon enters: epsilon*d is
// itself a metric. Immutable; copies share storage.
class Metric {
 public:
  static Metric euclidean(const LocationSet& locs, double scale = 1.0);
  // n x n row-major matrix; validated: exactly symmetric, zero diagonal,
  // positive off-diagonal, triangle inequality within 1e-9.
  static Metric explicit_matrix(std::vector<double> matrix, int n, double scale = 1.0);
  // Same validation; tags a matrix of shortest-path weights from a spanner.
  static Metric graph_induced(std::vector<double> apsp, int n, double scale = 1.0);

  MetricKind kind() const { return kind_; }
  int size() const { return n_; }
  double scale() const { return scale_; }

  // Checked access.
  double distance(int i, int j) const;

  // Unchecked access for inner loops; i and j must be valid indices.
  double at(int i, int j) const noexcept;

  // Same metric with the scale multiplied by `factor`.
  Metric scaled_by(double factor) const;

 private:
  Metric(MetricKind kind, double scale, int n) : kind_(kind), scale_(scale), n_(n) {}
  static Metric from_matrix_validated(MetricKind kind, std::vector<double> matrix, int n,
                                      double scale);

  MetricKind kind_;
  double scale_;
  int n_;
  std::shared_ptr<const std::vector<Point>> points_;   // euclidean
  std::shared_ptr<const std::vector<double>> matrix_;  // matrix-backed kinds
};

// Free-function form; throws input_error on bad indices.
double distance(const Metric& m, int i, int j);

}  // namespace geopriv
