#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the library's solver / remap code paths: the LP oracle
// enumerates basic feasible solutions with its own Gaussian elimination,
// and the remap oracle enumerates every deterministic remapping.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "geopriv/geo.hpp"
#include "geopriv/kernels.hpp"
#include "geopriv/lp.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/rng.hpp"

namespace testsupport {

struct TestInstance {
  geopriv::LocationSet locs;
  geopriv::Prior prior;
};

// Random points in [0, box]^2 (pairwise separation >= 1e-3) with a random
// strictly positive prior.
inline TestInstance random_instance(std::uint64_t seed, int n, double box = 2.0) {
  geopriv::SplitMix64 rng(seed);
  std::vector<geopriv::Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    geopriv::Point p{box * rng.next_unit(), box * rng.next_unit()};
    bool ok = true;
    for (const auto& q : pts) {
      const double dx = p.x - q.x, dy = p.y - q.y;
      if (dx * dx + dy * dy < 1e-6) {
        ok = false;
        break;
      }
    }
    if (ok) pts.push_back(p);
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& v : w) {
    v = 0.05 + rng.next_unit();
    sum += v;
  }
  for (double& v : w) v /= sum;
  return {geopriv::LocationSet(std::move(pts)), geopriv::Prior(std::move(w))};
}

inline std::vector<double> random_stochastic_matrix(std::uint64_t seed, int n) {
  geopriv::SplitMix64 rng(seed);
  std::vector<double> h(static_cast<std::size_t>(n) * n);
  for (int z = 0; z < n; ++z) {
    double sum = 0.0;
    for (int x = 0; x < n; ++x) {
      const double v = rng.next_unit();
      h[static_cast<std::size_t>(z) * n + x] = v;
      sum += v;
    }
    for (int x = 0; x < n; ++x) h[static_cast<std::size_t>(z) * n + x] /= sum;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Vertex-enumeration LP oracle (x >= 0 models only, no upper bounds):
// convert to equalities with slacks, try every basis, keep the best feasible
// basic solution. Returns nullopt when no basic feasible solution exists.

inline bool gauss_solve(std::vector<double> a, std::vector<double> b, int m,
                        std::vector<double>& x) {
  for (int k = 0; k < m; ++k) {
    int p = k;
    double best = std::abs(a[static_cast<std::size_t>(k) * m + k]);
    for (int i = k + 1; i < m; ++i) {
      const double v = std::abs(a[static_cast<std::size_t>(i) * m + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < 1e-10) return false;
    if (p != k) {
      for (int t = 0; t < m; ++t)
        std::swap(a[static_cast<std::size_t>(p) * m + t], a[static_cast<std::size_t>(k) * m + t]);
      std::swap(b[static_cast<std::size_t>(p)], b[static_cast<std::size_t>(k)]);
    }
    for (int i = k + 1; i < m; ++i) {
      const double f = a[static_cast<std::size_t>(i) * m + k] / a[static_cast<std::size_t>(k) * m + k];
      if (f == 0.0) continue;
      for (int t = k; t < m; ++t)
        a[static_cast<std::size_t>(i) * m + t] -= f * a[static_cast<std::size_t>(k) * m + t];
      b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
    }
  }
  x.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = m - 1; i >= 0; --i) {
    double v = b[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < m; ++t) v -= a[static_cast<std::size_t>(i) * m + t] * x[static_cast<std::size_t>(t)];
    x[static_cast<std::size_t>(i)] = v / a[static_cast<std::size_t>(i) * m + i];
  }
  return true;
}

inline std::optional<double> lp_vertex_oracle(const geopriv::LpModel& model) {
  using geopriv::SparseEntry;
  const int nv = model.num_vars;
  const int mle = static_cast<int>(model.le_rows.size());
  const int meq = static_cast<int>(model.eq_rows.size());
  const int m = mle + meq;
  const int ncols = nv + mle;
  if (m == 0) return std::nullopt;

  // dense column matrix of the equality form
  std::vector<double> a(static_cast<std::size_t>(m) * ncols, 0.0);
  std::vector<double> b(static_cast<std::size_t>(m), 0.0);
  std::vector<double> cost(static_cast<std::size_t>(ncols), 0.0);
  const double sign = model.sense == geopriv::Sense::minimize ? 1.0 : -1.0;
  for (const SparseEntry& e : model.objective) cost[static_cast<std::size_t>(e.index)] += sign * e.value;
  for (int i = 0; i < mle; ++i) {
    for (const SparseEntry& e : model.le_rows[static_cast<std::size_t>(i)].coefs)
      a[static_cast<std::size_t>(i) * ncols + e.index] += e.value;
    a[static_cast<std::size_t>(i) * ncols + nv + i] = 1.0;
    b[static_cast<std::size_t>(i)] = model.le_rows[static_cast<std::size_t>(i)].rhs;
  }
  for (int k = 0; k < meq; ++k) {
    for (const SparseEntry& e : model.eq_rows[static_cast<std::size_t>(k)].coefs)
      a[static_cast<std::size_t>(mle + k) * ncols + e.index] += e.value;
    b[static_cast<std::size_t>(mle + k)] = model.eq_rows[static_cast<std::size_t>(k)].rhs;
  }

  std::optional<double> best;
  std::vector<int> pick(static_cast<std::size_t>(m));
  // enumerate all size-m subsets of columns
  for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i;
  if (m > ncols) return std::nullopt;
  while (true) {
    std::vector<double> basis(static_cast<std::size_t>(m) * m);
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        basis[static_cast<std::size_t>(i) * m + k] =
            a[static_cast<std::size_t>(i) * ncols + pick[static_cast<std::size_t>(k)]];
    std::vector<double> xb;
    if (gauss_solve(std::move(basis), b, m, xb)) {
      bool feasible = true;
      for (double v : xb)
        if (v < -1e-8) {
          feasible = false;
          break;
        }
      if (feasible) {
        double obj = 0.0;
        for (int k = 0; k < m; ++k)
          obj += cost[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])] *
                 std::max(xb[static_cast<std::size_t>(k)], 0.0);
        if (!best || obj < *best) best = obj;
      }
    }
    // next combination
    int i = m - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == ncols - m + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < m; ++t)
      pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
  }
  if (best && model.sense == geopriv::Sense::maximize) best = -*best;
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive remap oracle: minimum expected adversary distance over every
// deterministic remapping (odometer order; the first minimizer is the
// lexicographically smallest).

struct RemapOracleResult {
  double min_value = std::numeric_limits<double>::infinity();
  std::vector<int> argmin;
};

inline RemapOracleResult exhaustive_remap_oracle(const double* K, const double* pi,
                                                 const geopriv::Metric& dA, int n) {
  RemapOracleResult res;
  std::vector<int> f(static_cast<std::size_t>(n), 0);
  while (true) {
    const double v = geopriv::kernels::expected_distance_assigned_serial(K, pi, dA, f.data(), n);
    if (v < res.min_value) {
      res.min_value = v;
      res.argmin = f;
    }
    int i = n - 1;
    while (i >= 0 && f[static_cast<std::size_t>(i)] == n - 1) {
      f[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++f[static_cast<std::size_t>(i)];
  }
  return res;
}

}  // namespace testsupport
