#pragma once

#include <string>
#include <vector>

#include "geopriv/geo.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/spanner.hpp"

namespace geopriv {

struct SparseEntry {
  int index = 0;
  double value = 0.0;
};

struct SparseRow {
  std::vector<SparseEntry> coefs;
  double rhs = 0.0;
};

enum class Sense { minimize, maximize };

// Sparse linear program: objective over num_vars variables, a*v <= rhs
// rows, a*v = rhs rows, per-variable lower bounds (default 0, -inf = free)
// and optional upper bounds.
struct LpModel {
  int num_vars = 0;
  Sense sense = Sense::minimize;
  std::vector<SparseEntry> objective;
  std::vector<SparseRow> le_rows;
  std::vector<SparseRow> eq_rows;
  std::vector<double> lower_bounds;  // empty means all zero
  std::vector<double> upper_bounds;  // empty means none
  std::vector<std::string> var_names;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  double objective_value = 0.0;
  std::vector<double> values;
  long iterations = 0;
};

struct SolverOptions {
  long max_iterations = 200000;
  double feasibility_tol = 1e-7;  // absolute, on returned solutions
  double optimality_tol = 1e-9;   // reduced-cost threshold
  // Solve row-heavy nonnegative models through their dual form (the basis
  // is then sized by the variable count, not the row count).
  bool allow_dual_form = true;
};

// Exact geo-indistinguishability program: variables k_xz indexed x*n+z,
// objective sum pi_x k_xz dq(x,z), one inequality per ordered triple
// (x, x', z) with x != x': k_xz - e^{eps*dx(x,x')} k_x'z <= 0, and one
// stochasticity equality per row of K.
LpModel build_primal_exact(const LocationSet& locs, const Metric& dx, double epsilon,
                           const Prior& pi, const Metric& dq);

// Spanner-reduced program: same objective and equalities, inequalities only
// for spanner edges (both orientations) with factor e^{(eps/delta)*w}.
LpModel build_primal_spanner(const LocationSet& locs, const Spanner& spanner, double epsilon,
                             double delta, const Prior& pi, const Metric& dq);

// Dual of the spanner-reduced program: a_{xx'z} >= 0 per inequality, free
// b_x per equality, maximize sum b_x subject to one row per (x, z).
LpModel build_dual_spanner(const LocationSet& locs, const Spanner& spanner, double epsilon,
                           double delta, const Prior& pi, const Metric& dq);

// Dense revised simplex (two-phase, Dantzig pricing with Bland fallback
// under degeneracy, deterministic tie-breaking). Single-threaded.
LpSolution solve(const LpModel& model, const SolverOptions& options = {});

// |primal - dual| <= tol * (1 + |primal|); both solutions must be optimal.
bool check_strong_duality(const LpSolution& primal, const LpSolution& dual, double tol);

}  // namespace geopriv
