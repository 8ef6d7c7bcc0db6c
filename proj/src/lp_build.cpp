#include <cmath>
#include <limits>
#include <string>

#include "geopriv/errors.hpp"
#include "geopriv/lp.hpp"

namespace geopriv {

namespace {

void check_privacy_inputs(const LocationSet& locs, double epsilon, const Prior& pi,
                          const Metric& dq) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw input_error("epsilon must be positive");
  if (pi.size() != locs.size()) throw input_error("prior does not match the location set");
  if (dq.size() != locs.size()) throw input_error("quality metric does not match the location set");
}

double privacy_factor(double exponent) {
  // e^{eps*d} must stay finite; at city scale this binds around eps*d ~ 700.
  const double f = std::exp(exponent);
  if (!std::isfinite(f))
    throw input_error("e^{eps*d} overflows for eps*d = " + std::to_string(exponent) +
                      "; rescale the instance (keep eps*diameter below ~700)");
  return f;
}

void add_objective_and_stochasticity(LpModel& model, int n, const Prior& pi, const Metric& dq) {
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      const double c = pi.at(x) * dq.at(x, z);
      if (c != 0.0) model.objective.push_back({x * n + z, c});
    }
  }
  for (int x = 0; x < n; ++x) {
    SparseRow row;
    row.coefs.reserve(static_cast<std::size_t>(n));
    for (int z = 0; z < n; ++z) row.coefs.push_back({x * n + z, 1.0});
    row.rhs = 1.0;
    model.eq_rows.push_back(std::move(row));
  }
}

}  // namespace

LpModel build_primal_exact(const LocationSet& locs, const Metric& dx, double epsilon,
                           const Prior& pi, const Metric& dq) {
  check_privacy_inputs(locs, epsilon, pi, dq);
  if (dx.size() != locs.size()) throw input_error("privacy metric does not match the location set");
  const int n = locs.size();

  LpModel model;
  model.num_vars = n * n;
  model.lower_bounds.assign(static_cast<std::size_t>(model.num_vars), 0.0);
  add_objective_and_stochasticity(model, n, pi, dq);

  model.le_rows.reserve(static_cast<std::size_t>(n) * n * (n - 1));
  for (int x = 0; x < n; ++x) {
    for (int xp = 0; xp < n; ++xp) {
      if (xp == x) continue;
      const double factor = privacy_factor(epsilon * dx.at(x, xp));
      for (int z = 0; z < n; ++z) {
        SparseRow row;
        row.coefs = {{x * n + z, 1.0}, {xp * n + z, -factor}};
        row.rhs = 0.0;
        model.le_rows.push_back(std::move(row));
      }
    }
  }
  return model;
}

LpModel build_primal_spanner(const LocationSet& locs, const Spanner& spanner, double epsilon,
                             double delta, const Prior& pi, const Metric& dq) {
  check_privacy_inputs(locs, epsilon, pi, dq);
  if (spanner.size() != locs.size()) throw input_error("spanner does not match the location set");
  if (!(delta >= 1.0)) throw input_error("delta must be >= 1");
  const int n = locs.size();

  LpModel model;
  model.num_vars = n * n;
  model.lower_bounds.assign(static_cast<std::size_t>(model.num_vars), 0.0);
  add_objective_and_stochasticity(model, n, pi, dq);

  model.le_rows.reserve(2 * spanner.edges().size() * static_cast<std::size_t>(n));
  for (const SpannerEdge& e : spanner.edges()) {
    const double factor = privacy_factor(epsilon / delta * e.weight);
    for (int orient = 0; orient < 2; ++orient) {
      const int x = orient == 0 ? e.a : e.b;
      const int xp = orient == 0 ? e.b : e.a;
      for (int z = 0; z < n; ++z) {
        SparseRow row;
        row.coefs = {{x * n + z, 1.0}, {xp * n + z, -factor}};
        row.rhs = 0.0;
        model.le_rows.push_back(std::move(row));
      }
    }
  }
  return model;
}

LpModel build_dual_spanner(const LocationSet& locs, const Spanner& spanner, double epsilon,
                           double delta, const Prior& pi, const Metric& dq) {
  check_privacy_inputs(locs, epsilon, pi, dq);
  if (spanner.size() != locs.size()) throw input_error("spanner does not match the location set");
  if (!(delta >= 1.0)) throw input_error("delta must be >= 1");
  const int n = locs.size();
  const int num_edges = static_cast<int>(spanner.edges().size());

  // Variable layout: a_{x->x', z} at (2*edge + orientation)*n + z, then the
  // free b_x block at 2*|E|*n + x.
  const int b_offset = 2 * num_edges * n;

  LpModel model;
  model.num_vars = b_offset + n;
  model.sense = Sense::maximize;
  model.lower_bounds.assign(static_cast<std::size_t>(model.num_vars), 0.0);
  for (int x = 0; x < n; ++x)
    model.lower_bounds[static_cast<std::size_t>(b_offset + x)] =
        -std::numeric_limits<double>::infinity();
  for (int x = 0; x < n; ++x) model.objective.push_back({b_offset + x, 1.0});

  // Incident edges per node, with the orientation index of a_{x->x'}.
  std::vector<std::vector<std::pair<int, int>>> incident(static_cast<std::size_t>(n));
  for (int e = 0; e < num_edges; ++e) {
    const SpannerEdge& edge = spanner.edges()[static_cast<std::size_t>(e)];
    incident[static_cast<std::size_t>(edge.a)].push_back({e, 0});  // a -> b
    incident[static_cast<std::size_t>(edge.b)].push_back({e, 1});  // b -> a
  }

  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      SparseRow row;
      row.coefs.push_back({b_offset + x, 1.0});
      for (auto [e, orient] : incident[static_cast<std::size_t>(x)]) {
        const double w = spanner.edges()[static_cast<std::size_t>(e)].weight;
        const double factor = privacy_factor(epsilon / delta * w);
        const int out_var = (2 * e + orient) * n + z;      // a_{x -> x', z}
        const int in_var = (2 * e + (1 - orient)) * n + z; // a_{x' -> x, z}
        row.coefs.push_back({in_var, factor});
        row.coefs.push_back({out_var, -1.0});
      }
      row.rhs = pi.at(x) * dq.at(x, z);
      model.le_rows.push_back(std::move(row));
    }
  }
  return model;
}

bool check_strong_duality(const LpSolution& primal, const LpSolution& dual, double tol) {
  if (primal.status != LpStatus::optimal || dual.status != LpStatus::optimal)
    throw input_error("strong duality check requires two optimal solutions");
  return std::abs(primal.objective_value - dual.objective_value) <=
         tol * (1.0 + std::abs(primal.objective_value));
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration-limit";
  }
  return "unknown";
}

}  // namespace geopriv
