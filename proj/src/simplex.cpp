#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "geopriv/errors.hpp"
#include "geopriv/lp.hpp"

// Two-phase dense revised simplex with an explicit basis inverse maintained
// by product-form updates. Pricing is Dantzig (most negative reduced cost,
// lowest index on ties); after a run of degenerate steps it falls back to
// Bland's rule, which restores the termination guarantee. The basis is
// refactorized from scratch before a solution is certified optimal.
//
// Row-heavy models with plain nonnegative variables (the privacy programs:
// O(n^3) rows over n^2 variables) are transposed and solved through their
// dual, whose basis is sized by the variable count; the primal solution is
// then read off the optimal row multipliers.

namespace geopriv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr int kBlandTrigger = 60;
constexpr long kRefactorInterval = 4096;

struct VarMap {
  int col_pos = -1;
  int col_neg = -1;  // >= 0 only for free variables (split)
  double shift = 0.0;
};

// Equality standard form: min cost*x, A*x = b, x >= 0, b >= 0.
struct StdForm {
  int m = 0;
  int ncols = 0;            // structural + slack columns (artificials appended later)
  int n_struct = 0;
  std::vector<std::vector<SparseEntry>> cols;
  std::vector<double> cost;
  std::vector<double> b;
  std::vector<double> row_sign;    // +1 / -1: whether the row kept its orientation
  std::vector<int> row_origin;     // original model row (le then eq), -1 if synthesized
  std::vector<int> slack_col;      // slack column of each std row, -1 for eq rows
  std::vector<VarMap> vars;
};

void validate_model(const LpModel& model) {
  if (model.num_vars <= 0) throw input_error("model must have at least one variable");
  auto check_entries = [&](const std::vector<SparseEntry>& entries) {
    for (const SparseEntry& e : entries) {
      if (e.index < 0 || e.index >= model.num_vars) throw input_error("row index out of range");
      if (!std::isfinite(e.value)) throw input_error("model coefficients must be finite");
    }
  };
  check_entries(model.objective);
  for (const SparseRow& r : model.le_rows) {
    check_entries(r.coefs);
    if (!std::isfinite(r.rhs)) throw input_error("model coefficients must be finite");
  }
  for (const SparseRow& r : model.eq_rows) {
    check_entries(r.coefs);
    if (!std::isfinite(r.rhs)) throw input_error("model coefficients must be finite");
  }
  if (!model.lower_bounds.empty() &&
      model.lower_bounds.size() != static_cast<std::size_t>(model.num_vars))
    throw input_error("lower_bounds size mismatch");
  if (!model.upper_bounds.empty() &&
      model.upper_bounds.size() != static_cast<std::size_t>(model.num_vars))
    throw input_error("upper_bounds size mismatch");
}

double lower_bound_of(const LpModel& model, int j) {
  return model.lower_bounds.empty() ? 0.0 : model.lower_bounds[static_cast<std::size_t>(j)];
}

double upper_bound_of(const LpModel& model, int j) {
  return model.upper_bounds.empty() ? kInf : model.upper_bounds[static_cast<std::size_t>(j)];
}

// Minimization costs; maximize models are negated internally.
std::vector<double> effective_costs(const LpModel& model) {
  std::vector<double> c(static_cast<std::size_t>(model.num_vars), 0.0);
  const double sign = model.sense == Sense::minimize ? 1.0 : -1.0;
  for (const SparseEntry& e : model.objective)
    c[static_cast<std::size_t>(e.index)] += sign * e.value;
  return c;
}

StdForm standardize(const LpModel& model) {
  StdForm f;
  const int nv = model.num_vars;
  f.vars.resize(static_cast<std::size_t>(nv));

  std::vector<double> c_eff = effective_costs(model);
  int next_col = 0;
  for (int j = 0; j < nv; ++j) {
    const double lb = lower_bound_of(model, j);
    VarMap& vm = f.vars[static_cast<std::size_t>(j)];
    if (lb == -kInf) {
      vm.col_pos = next_col++;
      vm.col_neg = next_col++;
    } else {
      if (!std::isfinite(lb)) throw input_error("lower bound must be finite or -inf");
      vm.col_pos = next_col++;
      vm.shift = lb;
    }
  }
  f.n_struct = next_col;

  // Row list: model LE rows, synthesized upper-bound rows, model EQ rows.
  // A dummy never-binding row stands in when the model has no rows at all,
  // so the core always has a basis to start from.
  struct Row {
    std::vector<SparseEntry> coefs;
    double rhs = 0.0;
    bool slack = false;  // gets a slack column
    int origin = -1;
  };
  std::vector<Row> rows;
  rows.reserve(model.le_rows.size() + model.eq_rows.size() + 1);
  for (std::size_t i = 0; i < model.le_rows.size(); ++i)
    rows.push_back({model.le_rows[i].coefs, model.le_rows[i].rhs, true, static_cast<int>(i)});
  if (!model.upper_bounds.empty()) {
    for (int j = 0; j < nv; ++j) {
      const double ub = upper_bound_of(model, j);
      if (ub == kInf) continue;
      rows.push_back({{{j, 1.0}}, ub, true, -1});
    }
  }
  for (std::size_t k = 0; k < model.eq_rows.size(); ++k)
    rows.push_back({model.eq_rows[k].coefs, model.eq_rows[k].rhs, false,
                    static_cast<int>(model.le_rows.size() + k)});
  if (rows.empty()) rows.push_back({{}, 1.0, true, -1});

  f.m = static_cast<int>(rows.size());
  f.b.resize(static_cast<std::size_t>(f.m));
  f.row_sign.assign(static_cast<std::size_t>(f.m), 1.0);
  f.row_origin.resize(static_cast<std::size_t>(f.m));
  int n_slack = 0;
  for (int i = 0; i < f.m; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    f.row_origin[static_cast<std::size_t>(i)] = r.origin;
    if (r.slack) ++n_slack;
    double shift_term = 0.0;
    for (const SparseEntry& e : r.coefs)
      shift_term += e.value * f.vars[static_cast<std::size_t>(e.index)].shift;
    const double b = r.rhs - shift_term;
    if (b < 0.0) {
      f.row_sign[static_cast<std::size_t>(i)] = -1.0;
      f.b[static_cast<std::size_t>(i)] = -b;
    } else {
      f.b[static_cast<std::size_t>(i)] = b;
    }
  }

  f.ncols = f.n_struct + n_slack;
  f.cols.assign(static_cast<std::size_t>(f.ncols), {});
  f.cost.assign(static_cast<std::size_t>(f.ncols), 0.0);
  for (int j = 0; j < nv; ++j) {
    const VarMap& vm = f.vars[static_cast<std::size_t>(j)];
    f.cost[static_cast<std::size_t>(vm.col_pos)] = c_eff[static_cast<std::size_t>(j)];
    if (vm.col_neg >= 0)
      f.cost[static_cast<std::size_t>(vm.col_neg)] = -c_eff[static_cast<std::size_t>(j)];
  }
  int slack_col = f.n_struct;
  f.slack_col.assign(static_cast<std::size_t>(f.m), -1);
  for (int i = 0; i < f.m; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    const double sign = f.row_sign[static_cast<std::size_t>(i)];
    for (const SparseEntry& e : r.coefs) {
      const double v = sign * e.value;
      if (v == 0.0) continue;
      const VarMap& vm = f.vars[static_cast<std::size_t>(e.index)];
      f.cols[static_cast<std::size_t>(vm.col_pos)].push_back({i, v});
      if (vm.col_neg >= 0) f.cols[static_cast<std::size_t>(vm.col_neg)].push_back({i, -v});
    }
    if (r.slack) {
      f.slack_col[static_cast<std::size_t>(i)] = slack_col;
      f.cols[static_cast<std::size_t>(slack_col++)].push_back({i, sign});
    }
  }
  return f;
}

class DenseInverse {
 public:
  void reset_identity(int m) {
    m_ = m;
    inv_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) inv_[idx(i, i)] = 1.0;
  }

  const double* row(int i) const { return inv_.data() + idx(i, 0); }

  void pivot(int r, const std::vector<double>& w) {
    double* invr = inv_.data() + idx(r, 0);
    const double piv = w[static_cast<std::size_t>(r)];
    for (int k = 0; k < m_; ++k) invr[k] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = w[static_cast<std::size_t>(i)];
      if (f == 0.0) continue;
      double* invi = inv_.data() + idx(i, 0);
      for (int k = 0; k < m_; ++k) invi[k] -= f * invr[k];
    }
  }

  void btran(const std::vector<double>& cb, std::vector<double>& y) const {
    y.assign(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const double c = cb[static_cast<std::size_t>(i)];
      if (c == 0.0) continue;
      const double* invi = inv_.data() + idx(i, 0);
      for (int k = 0; k < m_; ++k) y[static_cast<std::size_t>(k)] += c * invi[k];
    }
  }

  void ftran(const std::vector<SparseEntry>& a, std::vector<double>& w) const {
    w.assign(static_cast<std::size_t>(m_), 0.0);
    for (const SparseEntry& e : a) {
      const double v = e.value;
      for (int i = 0; i < m_; ++i) w[static_cast<std::size_t>(i)] += v * inv_[idx(i, e.index)];
    }
  }

  void apply(const std::vector<double>& a, std::vector<double>& w) const {
    w.assign(static_cast<std::size_t>(m_), 0.0);
    for (int k = 0; k < m_; ++k) {
      const double v = a[static_cast<std::size_t>(k)];
      if (v == 0.0) continue;
      for (int i = 0; i < m_; ++i) w[static_cast<std::size_t>(i)] += v * inv_[idx(i, k)];
    }
  }

  // Rebuild as the inverse of the matrix whose k-th column is cols[basis[k]],
  // by Gauss-Jordan with partial pivoting.
  bool refactor(const std::vector<std::vector<SparseEntry>>& cols, const std::vector<int>& basis) {
    const int m = m_;
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    for (int k = 0; k < m; ++k)
      for (const SparseEntry& e :
           cols[static_cast<std::size_t>(basis[static_cast<std::size_t>(k)])])
        a[static_cast<std::size_t>(e.index) * m + k] = e.value;
    std::vector<double> work(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) work[static_cast<std::size_t>(i) * m + i] = 1.0;
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
      // Privacy programs mix coefficient magnitudes across many orders, so
      // no fixed pivot threshold is scale-correct. Guard only against
      // genuine zeros; downstream residual checks police the accuracy.
      if (best < 1e-280) return false;
      if (p != k)
        for (int t = 0; t < m; ++t) {
          std::swap(a[static_cast<std::size_t>(p) * m + t], a[static_cast<std::size_t>(k) * m + t]);
          std::swap(work[static_cast<std::size_t>(p) * m + t],
                    work[static_cast<std::size_t>(k) * m + t]);
        }
      double* ak = a.data() + static_cast<std::size_t>(k) * m;
      double* wk = work.data() + static_cast<std::size_t>(k) * m;
      const double piv = ak[k];
      for (int t = k; t < m; ++t) ak[t] /= piv;
      for (int t = 0; t < m; ++t) wk[t] /= piv;
      for (int i = 0; i < m; ++i) {
        if (i == k) continue;
        const double g = a[static_cast<std::size_t>(i) * m + k];
        if (g == 0.0) continue;
        double* ai = a.data() + static_cast<std::size_t>(i) * m;
        double* wi = work.data() + static_cast<std::size_t>(i) * m;
        for (int t = k; t < m; ++t) ai[t] -= g * ak[t];
        for (int t = 0; t < m; ++t) wi[t] -= g * wk[t];
      }
    }
    inv_ = std::move(work);
    return true;
  }

 private:
  std::size_t idx(int i, int k) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k);
  }
  int m_ = 0;
  std::vector<double> inv_;
};

struct CoreResult {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> x;     // per standard column
  std::vector<double> y;     // row multipliers (standard row orientation), optimal only
  std::vector<char> basic;   // per standard column: in the final basis?
  long iterations = 0;
};

class Simplex {
 public:
  Simplex(StdForm form, const SolverOptions& opt) : f_(std::move(form)), opt_(opt) {}

  CoreResult run() {
    setup_basis();
    if (need_phase1_) {
      const LpStatus s1 = iterate(phase1_cost_, true);
      if (s1 == LpStatus::iteration_limit) return finish(s1);
      double infeas = 0.0;
      for (int i = 0; i < f_.m; ++i)
        if (basis_[static_cast<std::size_t>(i)] >= first_artificial_)
          infeas += xb_[static_cast<std::size_t>(i)];
      double scale = 1.0;
      for (double v : f_.b) scale = std::max(scale, std::abs(v));
      if (infeas > 1e-7 * scale) return finish(LpStatus::infeasible);
      purge_artificials();
    }
    return finish(iterate(f_.cost, false));
  }

  const StdForm& form() const { return f_; }
  // Surviving standard rows after redundancy elimination, in order; empty
  // when nothing was dropped.
  const std::vector<int>& kept_rows() const { return kept_rows_; }

 private:
  void setup_basis() {
    const int m = f_.m;
    first_artificial_ = f_.ncols;
    basis_.assign(static_cast<std::size_t>(m), -1);
    // Slack columns with +1 coefficient can start in the basis; the slack
    // for standard row i (if any) carries exactly one entry in row i.
    for (int j = f_.n_struct; j < first_artificial_; ++j) {
      const auto& col = f_.cols[static_cast<std::size_t>(j)];
      if (col.size() == 1 && col[0].value == 1.0) basis_[static_cast<std::size_t>(col[0].index)] = j;
    }
    need_phase1_ = false;
    for (int i = 0; i < m; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= 0) continue;
      f_.cols.push_back({{i, 1.0}});
      f_.cost.push_back(0.0);
      basis_[static_cast<std::size_t>(i)] = f_.ncols++;
      need_phase1_ = true;
    }
    phase1_cost_.assign(static_cast<std::size_t>(f_.ncols), 0.0);
    for (int j = first_artificial_; j < f_.ncols; ++j)
      phase1_cost_[static_cast<std::size_t>(j)] = 1.0;
    in_basis_.assign(static_cast<std::size_t>(f_.ncols), 0);
    for (int i = 0; i < m; ++i)
      in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = 1;
    inv_.reset_identity(m);
    xb_ = f_.b;
  }

  void compute_y(const std::vector<double>& cost) {
    cb_.assign(static_cast<std::size_t>(f_.m), 0.0);
    for (int i = 0; i < f_.m; ++i)
      cb_[static_cast<std::size_t>(i)] =
          cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
    inv_.btran(cb_, y_);
  }

  double reduced_cost(const std::vector<double>& cost, int j) const {
    double d = cost[static_cast<std::size_t>(j)];
    for (const SparseEntry& e : f_.cols[static_cast<std::size_t>(j)])
      d -= y_[static_cast<std::size_t>(e.index)] * e.value;
    return d;
  }

  // -1 when no reduced cost is below -optimality_tol.
  int pick_entering(const std::vector<double>& cost, bool phase1, bool bland) const {
    const int limit = phase1 ? f_.ncols : first_artificial_;
    int best = -1;
    double best_d = -opt_.optimality_tol;
    for (int j = 0; j < limit; ++j) {
      if (in_basis_[static_cast<std::size_t>(j)]) continue;
      const double d = reduced_cost(cost, j);
      if (d < best_d) {
        if (bland) return j;
        best_d = d;
        best = j;
      }
    }
    return best;
  }

  int pick_leaving(bool bland) const {
    double min_t = kInf;
    for (int i = 0; i < f_.m; ++i) {
      const double wi = w_[static_cast<std::size_t>(i)];
      if (wi > kPivotTol) min_t = std::min(min_t, std::max(xb_[static_cast<std::size_t>(i)], 0.0) / wi);
    }
    if (min_t == kInf) return -1;
    int leave = -1;
    double best_w = 0.0;
    for (int i = 0; i < f_.m; ++i) {
      const double wi = w_[static_cast<std::size_t>(i)];
      if (wi <= kPivotTol) continue;
      if (std::max(xb_[static_cast<std::size_t>(i)], 0.0) / wi > min_t + kDegenerateStep) continue;
      if (bland) {
        if (leave < 0 ||
            basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])
          leave = i;
      } else {
        // Prefer kicking artificials out, then the largest pivot element,
        // then the lowest row for determinism.
        const bool art = basis_[static_cast<std::size_t>(i)] >= first_artificial_;
        const bool cur_art =
            leave >= 0 && basis_[static_cast<std::size_t>(leave)] >= first_artificial_;
        if (leave < 0 || (art && !cur_art) || (art == cur_art && wi > best_w)) {
          leave = i;
          best_w = wi;
        }
      }
    }
    return leave;
  }

  void pivot(int enter, int leave) {
    const double t =
        std::max(xb_[static_cast<std::size_t>(leave)], 0.0) / w_[static_cast<std::size_t>(leave)];
    for (int i = 0; i < f_.m; ++i) xb_[static_cast<std::size_t>(i)] -= t * w_[static_cast<std::size_t>(i)];
    xb_[static_cast<std::size_t>(leave)] = t;
    in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)])] = 0;
    in_basis_[static_cast<std::size_t>(enter)] = 1;
    basis_[static_cast<std::size_t>(leave)] = enter;
    inv_.pivot(leave, w_);
    last_step_ = std::abs(t);
  }

  void refactor_now() {
    if (!inv_.refactor(f_.cols, basis_)) throw solver_error("basis factorization failed");
    inv_.apply(f_.b, xb_);
    for (double& v : xb_) {
      if (v < -1e-6) throw solver_error("basic solution lost feasibility");
      if (v < 0.0) v = 0.0;
    }
  }

  LpStatus iterate(const std::vector<double>& cost, bool phase1) {
    bool bland = false;
    int degenerate_streak = 0;
    long since_refactor = 0;
    int polish_rounds = 0;
    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::iteration_limit;
      compute_y(cost);
      int enter = pick_entering(cost, phase1, bland);
      if (enter < 0) {
        // Certify optimality on a fresh factorization; update drift can
        // hide a violated reduced cost.
        if (polish_rounds >= 3) return LpStatus::optimal;
        ++polish_rounds;
        refactor_now();
        compute_y(cost);
        enter = pick_entering(cost, phase1, bland);
        if (enter < 0) return LpStatus::optimal;
      }
      inv_.ftran(f_.cols[static_cast<std::size_t>(enter)], w_);
      const int leave = pick_leaving(bland);
      if (leave < 0) {
        if (phase1) throw solver_error("phase-1 objective unbounded; numerical failure");
        return LpStatus::unbounded;
      }
      pivot(enter, leave);
      ++iterations_;
      ++since_refactor;
      if (last_step_ < kDegenerateStep) {
        if (++degenerate_streak >= kBlandTrigger) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
      if (since_refactor >= kRefactorInterval) {
        refactor_now();
        since_refactor = 0;
      }
    }
  }

  // After a feasible phase 1: pivot basic artificials onto structural
  // columns; rows admitting no such pivot are linearly dependent and are
  // dropped from the working problem.
  void purge_artificials() {
    std::vector<int> redundant;
    for (int r = 0; r < f_.m; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < first_artificial_) continue;
      const double* vr = inv_.row(r);
      int pivot_col = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        double val = 0.0;
        for (const SparseEntry& e : f_.cols[static_cast<std::size_t>(j)])
          val += vr[e.index] * e.value;
        if (std::abs(val) > 1e-7) {
          pivot_col = j;
          break;
        }
      }
      if (pivot_col >= 0) {
        inv_.ftran(f_.cols[static_cast<std::size_t>(pivot_col)], w_);
        pivot(pivot_col, r);
        ++iterations_;
      } else {
        redundant.push_back(r);
      }
    }
    if (redundant.empty()) return;

    std::vector<char> drop(static_cast<std::size_t>(f_.m), 0);
    for (int r : redundant) drop[static_cast<std::size_t>(r)] = 1;
    std::vector<int> new_index(static_cast<std::size_t>(f_.m), -1);
    int m2 = 0;
    for (int i = 0; i < f_.m; ++i)
      if (!drop[static_cast<std::size_t>(i)]) new_index[static_cast<std::size_t>(i)] = m2++;
    for (auto& col : f_.cols) {
      std::vector<SparseEntry> kept;
      kept.reserve(col.size());
      for (const SparseEntry& e : col)
        if (!drop[static_cast<std::size_t>(e.index)])
          kept.push_back({new_index[static_cast<std::size_t>(e.index)], e.value});
      col = std::move(kept);
    }
    std::vector<double> b2, sign2;
    std::vector<int> origin2, basis2, slack2;
    for (int i = 0; i < f_.m; ++i) {
      if (drop[static_cast<std::size_t>(i)]) continue;
      b2.push_back(f_.b[static_cast<std::size_t>(i)]);
      sign2.push_back(f_.row_sign[static_cast<std::size_t>(i)]);
      origin2.push_back(f_.row_origin[static_cast<std::size_t>(i)]);
      slack2.push_back(f_.slack_col[static_cast<std::size_t>(i)]);
      basis2.push_back(basis_[static_cast<std::size_t>(i)]);
      kept_rows_.push_back(i);
    }
    f_.b = std::move(b2);
    f_.row_sign = std::move(sign2);
    f_.row_origin = std::move(origin2);
    f_.slack_col = std::move(slack2);
    basis_ = std::move(basis2);
    f_.m = static_cast<int>(f_.b.size());
    in_basis_.assign(static_cast<std::size_t>(f_.ncols), 0);
    for (int i = 0; i < f_.m; ++i)
      in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = 1;
    inv_.reset_identity(f_.m);
    refactor_now();
  }

  CoreResult finish(LpStatus status) {
    CoreResult res;
    res.status = status;
    res.iterations = iterations_;
    if (status == LpStatus::optimal) {
      refactor_now();
      compute_y(f_.cost);
      res.y = y_;
    }
    res.x.assign(static_cast<std::size_t>(f_.ncols), 0.0);
    res.basic.assign(static_cast<std::size_t>(f_.ncols), 0);
    for (int i = 0; i < f_.m; ++i) {
      res.x[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] =
          std::max(xb_[static_cast<std::size_t>(i)], 0.0);
      res.basic[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = 1;
    }
    return res;
  }

  StdForm f_;
  SolverOptions opt_;
  int first_artificial_ = 0;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  std::vector<int> kept_rows_;
  DenseInverse inv_;
  std::vector<double> xb_, y_, w_, cb_, phase1_cost_;
  bool need_phase1_ = false;
  double last_step_ = 0.0;
  long iterations_ = 0;
};

double objective_at(const LpModel& model, const std::vector<double>& x) {
  double obj = 0.0;
  for (const SparseEntry& e : model.objective)
    obj += e.value * x[static_cast<std::size_t>(e.index)];
  return obj;
}

double max_violation(const LpModel& model, const std::vector<double>& x) {
  double worst = 0.0;
  for (const SparseRow& r : model.le_rows) {
    double v = -r.rhs;
    for (const SparseEntry& e : r.coefs) v += e.value * x[static_cast<std::size_t>(e.index)];
    worst = std::max(worst, v);
  }
  for (const SparseRow& r : model.eq_rows) {
    double v = -r.rhs;
    for (const SparseEntry& e : r.coefs) v += e.value * x[static_cast<std::size_t>(e.index)];
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

void enforce_bounds(const LpModel& model, std::vector<double>& x) {
  for (int j = 0; j < model.num_vars; ++j) {
    const double lb = lower_bound_of(model, j);
    const double ub = upper_bound_of(model, j);
    double& v = x[static_cast<std::size_t>(j)];
    if (lb != -kInf && v < lb) {
      if (v < lb - 1e-9) throw solver_error("solution violates a lower bound");
      v = lb;
    }
    if (ub != kInf && v > ub) {
      if (v > ub + 1e-9) throw solver_error("solution violates an upper bound");
      v = ub;
    }
  }
}

std::vector<double> extract_values(const StdForm& f, const std::vector<double>& x_std, int nv) {
  std::vector<double> x(static_cast<std::size_t>(nv), 0.0);
  for (int j = 0; j < nv; ++j) {
    const VarMap& vm = f.vars[static_cast<std::size_t>(j)];
    double v = x_std[static_cast<std::size_t>(vm.col_pos)] + vm.shift;
    if (vm.col_neg >= 0) v -= x_std[static_cast<std::size_t>(vm.col_neg)];
    x[static_cast<std::size_t>(j)] = v;
  }
  return x;
}

LpSolution solve_direct(const LpModel& model, const SolverOptions& options) {
  Simplex simplex(standardize(model), options);
  const CoreResult core = simplex.run();

  LpSolution sol;
  sol.status = core.status;
  sol.iterations = core.iterations;
  if (core.status == LpStatus::infeasible || core.status == LpStatus::unbounded) return sol;

  sol.values = extract_values(simplex.form(), core.x, model.num_vars);
  if (core.status == LpStatus::optimal) {
    enforce_bounds(model, sol.values);
    if (max_violation(model, sol.values) > options.feasibility_tol)
      throw solver_error("optimal basis fails feasibility verification");
  }
  sol.objective_value = objective_at(model, sol.values);
  return sol;
}

// min g'w - e'v  s.t.  -G'w + E'v <= c,  w >= 0, v free
// for the primal min c'x s.t. Gx <= g, Ex = e, x >= 0. The optimal x of the
// primal equals minus the row multipliers of this program, and the optimal
// values are negatives of each other.
LpModel transpose_to_dual(const LpModel& model) {
  const int n = model.num_vars;
  const int mle = static_cast<int>(model.le_rows.size());
  const int meq = static_cast<int>(model.eq_rows.size());
  const std::vector<double> c_eff = effective_costs(model);

  LpModel dual;
  dual.num_vars = mle + meq;
  dual.sense = Sense::minimize;
  dual.lower_bounds.assign(static_cast<std::size_t>(dual.num_vars), 0.0);
  for (int k = 0; k < meq; ++k) dual.lower_bounds[static_cast<std::size_t>(mle + k)] = -kInf;
  for (int i = 0; i < mle; ++i)
    if (model.le_rows[static_cast<std::size_t>(i)].rhs != 0.0)
      dual.objective.push_back({i, model.le_rows[static_cast<std::size_t>(i)].rhs});
  for (int k = 0; k < meq; ++k)
    if (model.eq_rows[static_cast<std::size_t>(k)].rhs != 0.0)
      dual.objective.push_back({mle + k, -model.eq_rows[static_cast<std::size_t>(k)].rhs});

  dual.le_rows.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < mle; ++i)
    for (const SparseEntry& e : model.le_rows[static_cast<std::size_t>(i)].coefs)
      dual.le_rows[static_cast<std::size_t>(e.index)].coefs.push_back({i, -e.value});
  for (int k = 0; k < meq; ++k)
    for (const SparseEntry& e : model.eq_rows[static_cast<std::size_t>(k)].coefs)
      dual.le_rows[static_cast<std::size_t>(e.index)].coefs.push_back({mle + k, e.value});
  for (int j = 0; j < n; ++j)
    dual.le_rows[static_cast<std::size_t>(j)].rhs = c_eff[static_cast<std::size_t>(j)];
  return dual;
}

bool dual_form_eligible(const LpModel& model, const SolverOptions& options) {
  if (!options.allow_dual_form) return false;
  if (!model.upper_bounds.empty()) return false;
  for (int j = 0; j < model.num_vars; ++j)
    if (lower_bound_of(model, j) != 0.0) return false;
  const std::size_t rows = model.le_rows.size() + model.eq_rows.size();
  return rows > 2 * static_cast<std::size_t>(model.num_vars);
}

LpSolution solve_via_dual(const LpModel& model, const SolverOptions& options) {
  const LpModel dual = transpose_to_dual(model);
  Simplex simplex(standardize(dual), options);
  const CoreResult core = simplex.run();

  LpSolution sol;
  sol.iterations = core.iterations;
  switch (core.status) {
    case LpStatus::iteration_limit:
      sol.status = LpStatus::iteration_limit;
      return sol;
    case LpStatus::unbounded:
      sol.status = LpStatus::infeasible;
      return sol;
    case LpStatus::infeasible:
      // Transposed program infeasible: the original is unbounded (it cannot
      // be infeasible for the models routed here, which always admit
      // feasible points; see dual_form_eligible).
      sol.status = LpStatus::unbounded;
      return sol;
    case LpStatus::optimal:
      break;
  }

  // Row multipliers of the transposed program, original orientation. A row
  // whose slack is basic is not binding, so its multiplier is exactly zero
  // by complementary slackness; forcing that kills the numerical dust that
  // would otherwise land on primal variables that are exactly zero.
  std::vector<double> y(static_cast<std::size_t>(model.num_vars), 0.0);
  const StdForm& f = simplex.form();
  for (int i = 0; i < f.m; ++i) {
    const int orig = f.row_origin[static_cast<std::size_t>(i)];
    if (orig < 0) continue;
    const int slack = f.slack_col[static_cast<std::size_t>(i)];
    if (slack >= 0 && core.basic[static_cast<std::size_t>(slack)]) continue;
    y[static_cast<std::size_t>(orig)] =
        f.row_sign[static_cast<std::size_t>(i)] * core.y[static_cast<std::size_t>(i)];
  }

  sol.values.assign(static_cast<std::size_t>(model.num_vars), 0.0);
  for (int j = 0; j < model.num_vars; ++j) {
    double v = -y[static_cast<std::size_t>(j)];
    if (v < 0.0) {
      if (v < -1e-7) throw solver_error("transposed solve yields a negative primal value");
      v = 0.0;
    }
    sol.values[static_cast<std::size_t>(j)] = v;
  }
  sol.status = LpStatus::optimal;
  sol.objective_value = objective_at(model, sol.values);
  if (max_violation(model, sol.values) > options.feasibility_tol)
    throw solver_error("transposed solve fails primal feasibility verification");

  const std::vector<double> xd = extract_values(f, core.x, dual.num_vars);
  const double dual_obj = objective_at(dual, xd);
  const double sign = model.sense == Sense::minimize ? 1.0 : -1.0;
  if (std::abs(sign * sol.objective_value + dual_obj) >
      1e-5 * (1.0 + std::abs(sol.objective_value)))
    throw solver_error("duality gap in transposed solve");
  return sol;
}

}  // namespace

LpSolution solve(const LpModel& model, const SolverOptions& options) {
  validate_model(model);
  if (dual_form_eligible(model, options)) return solve_via_dual(model, options);
  return solve_direct(model, options);
}

}  // namespace geopriv
