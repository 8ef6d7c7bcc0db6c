#include "geopriv/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "geopriv/errors.hpp"
#include "geopriv/kernels.hpp"

namespace geopriv {

namespace {
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

LocationSet::LocationSet(std::vector<Point> points, std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.empty()) throw input_error("LocationSet requires at least one point");
  if (!labels_.empty() && labels_.size() != points_.size())
    throw input_error("LocationSet labels must match point count");
  for (const Point& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw input_error("LocationSet coordinates must be finite");
  }
  // Exact-duplicate check without the n^2 scan: sort indices by coordinates
  // and compare neighbours.
  std::vector<int> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (points_[a].x != points_[b].x) return points_[a].x < points_[b].x;
    return points_[a].y < points_[b].y;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Point& a = points_[order[i - 1]];
    const Point& b = points_[order[i]];
    if (a.x == b.x && a.y == b.y) throw input_error("LocationSet points must be distinct");
  }
}

const Point& LocationSet::point(int i) const {
  if (i < 0 || i >= size()) throw input_error("location index out of range");
  return points_[static_cast<std::size_t>(i)];
}

std::string LocationSet::label_or_index(int i) const {
  if (i < 0 || i >= size()) throw input_error("location index out of range");
  if (has_labels()) return labels_[static_cast<std::size_t>(i)];
  return "L" + std::to_string(i);
}

Point project(double lat, double lon, double ref_lat, double ref_lon) {
  if (!std::isfinite(lat) || !std::isfinite(lon) || std::abs(lat) > 90.0 || std::abs(lon) > 180.0)
    throw input_error("coordinates out of range: lat in [-90,90], lon in [-180,180]");
  if (!std::isfinite(ref_lat) || !std::isfinite(ref_lon) || std::abs(ref_lat) > 90.0 ||
      std::abs(ref_lon) > 180.0)
    throw input_error("reference coordinates out of range");
  const double to_rad = kPi / 180.0;
  Point p;
  p.x = kEarthRadiusKm * (lon - ref_lon) * to_rad * std::cos(ref_lat * to_rad);
  p.y = kEarthRadiusKm * (lat - ref_lat) * to_rad;
  return p;
}

LocationSet build_grid(const GridSpec& spec) {
  if (spec.cell_width <= 0.0 || spec.cell_height <= 0.0)
    throw input_error("grid cells must have positive size");
  if (spec.columns < 1 || spec.rows < 1) throw input_error("grid must have positive dimensions");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(spec.columns) * static_cast<std::size_t>(spec.rows));
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.columns; ++c) {
      pts.push_back({spec.origin.x + (c + 0.5) * spec.cell_width,
                     spec.origin.y + (r + 0.5) * spec.cell_height});
    }
  }
  return LocationSet(std::move(pts));
}

Metric Metric::euclidean(const LocationSet& locs, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw input_error("metric scale must be positive");
  Metric m(MetricKind::euclidean, scale, locs.size());
  m.points_ = std::make_shared<const std::vector<Point>>(locs.points());
  return m;
}

Metric Metric::from_matrix_validated(MetricKind kind, std::vector<double> matrix, int n,
                                     double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw input_error("metric scale must be positive");
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw input_error("metric matrix must be n x n");
  auto check = kernels::validate_metric(matrix.data(), n, 1e-9);
  if (!check.ok) {
    throw input_error(std::string("matrix is not a metric: ") + check.violation + " violated at (" +
                      std::to_string(check.i) + "," + std::to_string(check.j) +
                      (check.k >= 0 ? "," + std::to_string(check.k) : "") + ")");
  }
  Metric m(kind, scale, n);
  m.matrix_ = std::make_shared<const std::vector<double>>(std::move(matrix));
  return m;
}

Metric Metric::explicit_matrix(std::vector<double> matrix, int n, double scale) {
  return from_matrix_validated(MetricKind::explicit_matrix, std::move(matrix), n, scale);
}

Metric Metric::graph_induced(std::vector<double> apsp, int n, double scale) {
  return from_matrix_validated(MetricKind::graph_induced, std::move(apsp), n, scale);
}

double Metric::at(int i, int j) const noexcept {
  double base;
  if (kind_ == MetricKind::euclidean) {
    const Point& a = (*points_)[static_cast<std::size_t>(i)];
    const Point& b = (*points_)[static_cast<std::size_t>(j)];
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    base = std::sqrt(dx * dx + dy * dy);
  } else {
    base = (*matrix_)[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
  }
  return scale_ * base;
}

double Metric::distance(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw input_error("metric index out of range");
  return at(i, j);
}

Metric Metric::scaled_by(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw input_error("metric scale must be positive");
  Metric m = *this;
  m.scale_ *= factor;
  return m;
}

double distance(const Metric& m, int i, int j) { return m.distance(i, j); }

}  // namespace geopriv
