#include "geopriv/mech.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "geopriv/errors.hpp"
#include "geopriv/kernels.hpp"
#include "geopriv/rng.hpp"

namespace geopriv {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// Pull K out of an LP solution: clamp solver-level negative dust, zero out
// columns that are numerically unused, then renormalize each row so the
// stochasticity invariant holds to 1e-9.
//
// The column zeroing is consistency-preserving: in any feasible K the
// privacy inequalities chain within a column, so a reported location is
// either unused (the whole column is exactly zero) or every entry of its
// column is bounded below by a fixed fraction of the column maximum. A
// column whose maximum is at dust level can therefore only be an unused
// column carrying numerical noise.
std::vector<double> matrix_from_lp(const std::vector<double>& values, int n) {
  std::vector<double> k(values.begin(), values.end());
  for (double& v : k) {
    if (v < 0.0) v = 0.0;
  }
  for (int z = 0; z < n; ++z) {
    double colmax = 0.0;
    for (int x = 0; x < n; ++x)
      colmax = std::max(colmax, k[static_cast<std::size_t>(x) * n + z]);
    if (colmax <= 1e-8)
      for (int x = 0; x < n; ++x) k[static_cast<std::size_t>(x) * n + z] = 0.0;
  }
  for (int x = 0; x < n; ++x) {
    double sum = 0.0;
    for (int z = 0; z < n; ++z) sum += k[static_cast<std::size_t>(x) * n + z];
    if (std::abs(sum - 1.0) > 1e-6)
      throw solver_error("LP solution row sums to " + std::to_string(sum));
    for (int z = 0; z < n; ++z) {
      double& v = k[static_cast<std::size_t>(x) * n + z];
      v = std::min(v / sum, 1.0);
    }
  }
  return k;
}

void verify_privacy_or_throw(const std::vector<double>& k, const LocationSet& locs,
                             const Metric& dx, double epsilon) {
  const Metric scaled = dx.scaled_by(epsilon);
  const auto scan = kernels::privacy_scan(k.data(), scaled, locs.size(), 1e-6);
  if (!scan.satisfied)
    throw invariant_error("constructed mechanism violates the privacy constraint at triple (" +
                          std::to_string(scan.x) + "," + std::to_string(scan.xprime) + "," +
                          std::to_string(scan.z) + ")");
}

Mechanism build_from_model(const LpModel& model, const LocationSet& locs, const Metric& dx,
                           double epsilon, std::optional<double> delta, MechanismKind kind,
                           BuildStats* stats, const SolverOptions& solver) {
  const double t0 = now_seconds();
  const LpSolution sol = solve(model, solver);
  const double t1 = now_seconds();
  if (sol.status != LpStatus::optimal)
    throw solver_error(std::string("optimal mechanism LP ended with status ") +
                       to_string(sol.status));
  std::vector<double> k = matrix_from_lp(sol.values, locs.size());
  verify_privacy_or_throw(k, locs, dx, epsilon);
  if (stats) {
    stats->lp_iterations = sol.iterations;
    stats->solve_seconds = t1 - t0;
    stats->objective = sol.objective_value;
    stats->lp_inequalities = static_cast<long long>(model.le_rows.size());
  }
  Provenance prov;
  prov.kind = kind;
  prov.epsilon = epsilon;
  prov.delta = delta;
  return Mechanism(locs, std::move(k), prov);
}

}  // namespace

Mechanism::Mechanism(LocationSet locations, std::vector<double> matrix, Provenance provenance)
    : locations_(std::move(locations)), matrix_(std::move(matrix)), provenance_(provenance) {
  const int n = locations_.size();
  if (matrix_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw input_error("mechanism matrix must be n x n");
  for (int x = 0; x < n; ++x) {
    double sum = 0.0;
    for (int z = 0; z < n; ++z) {
      const double v = matrix_[static_cast<std::size_t>(x) * n + z];
      if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw invariant_error("mechanism entries must lie in [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw invariant_error("mechanism row " + std::to_string(x) + " sums to " +
                            std::to_string(sum));
  }
}

double Mechanism::at(int x, int z) const {
  const int n = size();
  if (x < 0 || x >= n || z < 0 || z >= n) throw input_error("mechanism index out of range");
  return matrix_[static_cast<std::size_t>(x) * n + z];
}

const double* Mechanism::row(int x) const {
  return matrix_.data() + static_cast<std::size_t>(x) * size();
}

Mechanism build_optql_exact(const LocationSet& locs, const Metric& dx, double epsilon,
                            const Prior& pi, const Metric& dq, BuildStats* stats,
                            const SolverOptions& solver) {
  const LpModel model = build_primal_exact(locs, dx, epsilon, pi, dq);
  return build_from_model(model, locs, dx, epsilon, std::nullopt, MechanismKind::optql_exact,
                          stats, solver);
}

Mechanism build_optql_spanner(const LocationSet& locs, const Metric& dx, double epsilon,
                              double delta, const Prior& pi, const Metric& dq, BuildStats* stats,
                              const SolverOptions& solver) {
  const Spanner spanner = get_spanner(locs, dx, delta);
  return build_optql_spanner(locs, spanner, dx, epsilon, pi, dq, stats, solver);
}

Mechanism build_optql_spanner(const LocationSet& locs, const Spanner& spanner, const Metric& dx,
                              double epsilon, const Prior& pi, const Metric& dq,
                              BuildStats* stats, const SolverOptions& solver) {
  const double delta = spanner.delta_requested();
  const LpModel model = build_primal_spanner(locs, spanner, epsilon, delta, pi, dq);
  return build_from_model(model, locs, dx, epsilon, delta, MechanismKind::optql_spanner, stats,
                          solver);
}

Mechanism build_planar_laplace(const LocationSet& locs, double epsilon, std::uint64_t seed,
                               int samples_per_location) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw input_error("epsilon must be positive");
  if (samples_per_location < 10000)
    throw input_error("planar Laplace estimation needs at least 10^4 samples per location");
  std::vector<double> k =
      kernels::planar_laplace_matrix(locs.points(), epsilon, seed, samples_per_location);
  Provenance prov;
  prov.kind = MechanismKind::planar_laplace;
  prov.epsilon = epsilon;
  prov.seed = seed;
  return Mechanism(locs, std::move(k), prov);
}

Calibration calibrate_planar_laplace(const LocationSet& locs, const Prior& pi, const Metric& dq,
                                     double target_ql, double tol, std::uint64_t seed,
                                     int samples_per_location) {
  if (pi.size() != locs.size()) throw input_error("prior does not match the location set");
  if (dq.size() != locs.size()) throw input_error("quality metric does not match the location set");
  if (!(target_ql > 0.0)) throw input_error("target QL must be positive");
  if (!(tol > 0.0)) throw input_error("calibration tolerance must be positive");

  const auto ql_of = [&](double eps) {
    const std::vector<double> k =
        kernels::planar_laplace_matrix(locs.points(), eps, seed, samples_per_location);
    return kernels::expected_distance(k.data(), pi.data(), dq, locs.size());
  };

  // QL decreases in eps'. Expand the bracket until the target is inside.
  double lo = 0.25, hi = 4.0;
  double ql_lo = ql_of(lo), ql_hi = ql_of(hi);
  constexpr double kLoCap = 1e-7, kHiCap = 1e6;
  while (ql_lo < target_ql && lo > kLoCap) {
    lo *= 0.25;
    ql_lo = ql_of(lo);
  }
  while (ql_hi > target_ql && hi < kHiCap) {
    hi *= 4.0;
    ql_hi = ql_of(hi);
  }
  if (ql_lo < target_ql || ql_hi > target_ql)
    throw solver_error("calibration target " + std::to_string(target_ql) +
                       " km outside the attainable QL range [" + std::to_string(ql_hi) + ", " +
                       std::to_string(ql_lo) + "] km");

  double best_eps = hi, best_ql = ql_hi;
  if (std::abs(ql_lo - target_ql) < std::abs(best_ql - target_ql)) {
    best_eps = lo;
    best_ql = ql_lo;
  }
  for (int it = 0; it < 200 && std::abs(best_ql - target_ql) > tol; ++it) {
    const double mid = std::sqrt(lo * hi);  // eps' ranges over decades
    const double ql_mid = ql_of(mid);
    if (std::abs(ql_mid - target_ql) < std::abs(best_ql - target_ql)) {
      best_eps = mid;
      best_ql = ql_mid;
    }
    if (ql_mid > target_ql)
      lo = mid;
    else
      hi = mid;
    if (hi / lo < 1.0 + 1e-12) break;
  }
  if (std::abs(best_ql - target_ql) > tol)
    throw solver_error("calibration did not reach the target within tolerance; closest QL " +
                       std::to_string(best_ql) + " km");

  Mechanism mech = build_planar_laplace(locs, best_eps, seed, samples_per_location);
  return Calibration{best_eps, best_ql, std::move(mech)};
}

Mechanism build_exponential(const LocationSet& locs, const Metric& dx, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw input_error("epsilon must be positive");
  if (dx.size() != locs.size()) throw input_error("metric does not match the location set");
  const int n = locs.size();
  std::vector<double> k(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    double sum = 0.0;
    for (int z = 0; z < n; ++z) {
      const double v = std::exp(-0.5 * epsilon * dx.at(x, z));
      k[static_cast<std::size_t>(x) * n + z] = v;
      sum += v;
    }
    for (int z = 0; z < n; ++z) k[static_cast<std::size_t>(x) * n + z] /= sum;
  }
  Provenance prov;
  prov.kind = MechanismKind::exponential;
  prov.epsilon = epsilon;
  return Mechanism(locs, std::move(k), prov);
}

int obfuscate(const Mechanism& mech, int x, std::uint64_t seed) {
  const int n = mech.size();
  if (x < 0 || x >= n) throw input_error("location index out of range");
  SplitMix64 rng(seed);
  const double u = rng.next_unit();
  const double* row = mech.row(x);
  double acc = 0.0;
  int last_positive = 0;
  for (int z = 0; z < n; ++z) {
    if (row[z] > 0.0) last_positive = z;
    acc += row[z];
    if (u < acc) return z;
  }
  return last_positive;  // u landed in rounding dust past the last bucket
}

const char* to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::optql_exact: return "optql-exact";
    case MechanismKind::optql_spanner: return "optql-spanner";
    case MechanismKind::planar_laplace: return "planar-laplace";
    case MechanismKind::exponential: return "exponential";
    case MechanismKind::external: return "external";
  }
  return "unknown";
}

MechanismKind mechanism_kind_from_string(const std::string& s) {
  if (s == "optql-exact") return MechanismKind::optql_exact;
  if (s == "optql-spanner") return MechanismKind::optql_spanner;
  if (s == "planar-laplace") return MechanismKind::planar_laplace;
  if (s == "exponential") return MechanismKind::exponential;
  if (s == "external") return MechanismKind::external;
  throw input_error("unknown mechanism kind: " + s);
}

}  // namespace geopriv
