#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geopriv/geo.hpp"
#include "geopriv/lp.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/spanner.hpp"

namespace geopriv {

enum class MechanismKind { optql_exact, optql_spanner, planar_laplace, exponential, external };

const char* to_string(MechanismKind kind);
MechanismKind mechanism_kind_from_string(const std::string& s);

struct Provenance {
  MechanismKind kind = MechanismKind::external;
  double epsilon = 0.0;  // 1/km
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
};

// Row-stochastic reporting matrix K over a LocationSet: k_xz is the
// probability of reporting z from true location x.
class Mechanism {
 public:
  // Validates: entries in [0,1] and finite, rows sum to 1 within 1e-9.
  Mechanism(LocationSet locations, std::vector<double> matrix, Provenance provenance);

  int size() const { return locations_.size(); }
  const LocationSet& locations() const { return locations_; }
  double at(int x, int z) const;
  const std::vector<double>& matrix() const { return matrix_; }
  const double* row(int x) const;
  const Provenance& provenance() const { return provenance_; }

 private:
  LocationSet locations_;
  std::vector<double> matrix_;
  Provenance provenance_;
};

struct BuildStats {
  long lp_iterations = 0;
  double solve_seconds = 0.0;
  double objective = 0.0;  // QL of the built mechanism
  long long lp_inequalities = 0;
};

// Minimizes QL(K, pi, dq) subject to the full eps*dx privacy constraint set
// (one inequality per ordered triple). The result is verified against the
// exact constraints before being returned.
Mechanism build_optql_exact(const LocationSet& locs, const Metric& dx, double epsilon,
                            const Prior& pi, const Metric& dq, BuildStats* stats = nullptr,
                            const SolverOptions& solver = {});

// Builds the greedy delta-spanner of dx and solves the reduced program at
// level eps/delta on the graph metric. The result is still verified against
// the full eps*dx constraint set (the executable form of the spanner
// privacy guarantee).
Mechanism build_optql_spanner(const LocationSet& locs, const Metric& dx, double epsilon,
                              double delta, const Prior& pi, const Metric& dq,
                              BuildStats* stats = nullptr, const SolverOptions& solver = {});
// Same, over a prebuilt spanner; delta is the spanner's requested dilation.
Mechanism build_optql_spanner(const LocationSet& locs, const Spanner& spanner, const Metric& dx,
                              double epsilon, const Prior& pi, const Metric& dq,
                              BuildStats* stats = nullptr, const SolverOptions& solver = {});

// Discretized planar Laplace: polar noise (uniform angle, Gamma(2, 1/eps)
// radius) snapped to the nearest location, estimated from
// samples_per_location draws per row. Deterministic given the seed. Not
// guaranteed to satisfy eps-geo-indistinguishability after snapping; used
// as a QL-matched baseline.
Mechanism build_planar_laplace(const LocationSet& locs, double epsilon, std::uint64_t seed,
                               int samples_per_location);

struct Calibration {
  double epsilon_prime = 0.0;
  double achieved_ql = 0.0;
  Mechanism mechanism;
};

// Bisection on eps' (same seed throughout, so QL(eps') is deterministic and
// empirically monotone) until |QL - target_ql| <= tol. Throws solver_error
// when the target is outside the attainable range, reporting that range.
Calibration calibrate_planar_laplace(const LocationSet& locs, const Prior& pi, const Metric& dq,
                                     double target_ql, double tol, std::uint64_t seed,
                                     int samples_per_location = 100000);

// k_xz proportional to e^{-(eps/2) dx(x,z)}; always eps*dx-private by the
// triangle inequality. Feasible baseline for optimality tests.
Mechanism build_exponential(const LocationSet& locs, const Metric& dx, double epsilon);

// Samples a reported index from row x by inverse CDF in index order.
int obfuscate(const Mechanism& mech, int x, std::uint64_t seed);

}  // namespace geopriv
