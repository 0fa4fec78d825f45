#include "tug/lp.hpp"

#include <algorithm>
#include <limits>

namespace tug {

LinearProgram::LinearProgram(Sense sense, RationalVector objective)
    : sense_(sense), objective_(std::move(objective)) {
  if (objective_.empty()) {
    throw std::invalid_argument("LinearProgram: needs at least one variable");
  }
  bounds_.assign(objective_.size(), VarBound::kNonNegative);
}

void LinearProgram::set_bound(std::size_t var, VarBound bound) {
  if (var >= bounds_.size()) throw std::invalid_argument("set_bound: no such variable");
  bounds_[var] = bound;
}

void LinearProgram::add_constraint(RationalVector coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != objective_.size()) {
    throw std::invalid_argument("add_constraint: row width differs from objective");
  }
  constraints_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

// Internal standard form: maximize cost . v  s.t.  mat v = rhs, v >= 0,
// rhs >= 0. Free variables are split, rows are sign-scaled, and every row
// gets either a slack or an artificial as its initial identity column.
struct Standard {
  std::size_t rows = 0;
  std::size_t cols = 0;  // excludes rhs
  std::vector<RationalVector> mat;
  RationalVector rhs;
  RationalVector cost;             // phase-2 cost per column
  std::vector<int> row_sign;       // +-1 applied to the original row
  std::vector<std::pair<int, int>> var_cols;  // original var -> (pos col, neg col or -1)
  std::vector<int> ident_col;      // per row: initial identity column
  std::vector<bool> artificial;    // per column
  bool negated = false;            // original sense was minimize
};

Standard standardize(const LinearProgram& lp) {
  Standard s;
  s.rows = lp.num_constraints();
  s.negated = lp.sense() == Sense::kMinimize;

  // Column layout: original vars (pos, then neg for free vars), then one
  // slack/surplus per inequality row, then artificials.
  std::size_t n_struct = 0;
  s.var_cols.resize(lp.num_vars());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    s.var_cols[j].first = static_cast<int>(n_struct++);
    s.var_cols[j].second =
        lp.bounds()[j] == VarBound::kFree ? static_cast<int>(n_struct++) : -1;
  }

  std::vector<Relation> scaled_rel(s.rows);
  s.row_sign.resize(s.rows, 1);
  for (std::size_t i = 0; i < s.rows; ++i) {
    const LpConstraint& c = lp.constraints()[i];
    scaled_rel[i] = c.rel;
    if (c.rhs.sign() < 0) {
      s.row_sign[i] = -1;
      if (c.rel == Relation::kLe) scaled_rel[i] = Relation::kGe;
      if (c.rel == Relation::kGe) scaled_rel[i] = Relation::kLe;
    }
  }

  std::size_t n_slack = 0;
  for (std::size_t i = 0; i < s.rows; ++i) {
    if (scaled_rel[i] != Relation::kEq) ++n_slack;
  }
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < s.rows; ++i) {
    if (scaled_rel[i] != Relation::kLe) ++n_art;
  }
  s.cols = n_struct + n_slack + n_art;
  s.mat.assign(s.rows, RationalVector(s.cols));
  s.rhs.resize(s.rows);
  s.cost.assign(s.cols, Rational());
  s.artificial.assign(s.cols, false);
  s.ident_col.assign(s.rows, -1);

  const Rational obj_sign = s.negated ? Rational(-1) : Rational(1);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const Rational cj = lp.objective()[j] * obj_sign;
    s.cost[s.var_cols[j].first] = cj;
    if (s.var_cols[j].second >= 0) s.cost[s.var_cols[j].second] = -cj;
  }

  std::size_t slack_at = n_struct;
  std::size_t art_at = n_struct + n_slack;
  for (std::size_t i = 0; i < s.rows; ++i) {
    const LpConstraint& c = lp.constraints()[i];
    const Rational sign(s.row_sign[i]);
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      const Rational a = c.coeffs[j] * sign;
      s.mat[i][s.var_cols[j].first] = a;
      if (s.var_cols[j].second >= 0) s.mat[i][s.var_cols[j].second] = -a;
    }
    s.rhs[i] = c.rhs * sign;
    switch (scaled_rel[i]) {
      case Relation::kLe:
        s.mat[i][slack_at] = Rational(1);
        s.ident_col[i] = static_cast<int>(slack_at++);
        break;
      case Relation::kGe:
        s.mat[i][slack_at] = Rational(-1);
        ++slack_at;
        s.mat[i][art_at] = Rational(1);
        s.artificial[art_at] = true;
        s.ident_col[i] = static_cast<int>(art_at++);
        break;
      case Relation::kEq:
        s.mat[i][art_at] = Rational(1);
        s.artificial[art_at] = true;
        s.ident_col[i] = static_cast<int>(art_at++);
        break;
    }
  }
  return s;
}

// Dense exact tableau. The objective row carries reduced costs z_j - c_j and
// the current objective value.
class Tableau {
 public:
  explicit Tableau(Standard s) : s_(std::move(s)) {
    t_ = s_.mat;
    rhs_ = s_.rhs;
    basis_.resize(s_.rows);
    for (std::size_t i = 0; i < s_.rows; ++i) basis_[i] = s_.ident_col[i];
    // Pivot ceiling: Bland's rule terminates long before this at desk scale.
    pivot_limit_ = 2000 + 64 * (s_.rows + 1) * (s_.cols + 1);
  }

  // Runs phases 1 and 2. Returns the status.
  LpStatus run() {
    if (s_.rows > 0) {
      RationalVector phase1_cost(s_.cols);
      for (std::size_t j = 0; j < s_.cols; ++j) {
        if (s_.artificial[j]) phase1_cost[j] = Rational(-1);
      }
      load_objective(phase1_cost);
      LpStatus st = iterate(/*blocked_artificials=*/false);
      if (st != LpStatus::kOptimal) {
        throw SolverInternalError("phase 1 cannot be unbounded");
      }
      if (value_.sign() < 0) return LpStatus::kInfeasible;
      drive_out_artificials();
    }
    load_objective(s_.cost);
    return iterate(/*blocked_artificials=*/true);
  }

  RationalVector column_values() const {
    RationalVector v(s_.cols);
    for (std::size_t i = 0; i < s_.rows; ++i) v[basis_[i]] = rhs_[i];
    return v;
  }

  // y_i = reduced cost at row i's initial identity column (its phase-2 cost
  // is zero), i.e. the equality-form dual of the standardized program.
  RationalVector equality_duals() const {
    RationalVector y(s_.rows);
    for (std::size_t i = 0; i < s_.rows; ++i) y[i] = zrow_[s_.ident_col[i]];
    return y;
  }

  const Rational& value() const { return value_; }
  const std::vector<int>& basis() const { return basis_; }
  const Standard& standard() const { return s_; }

 private:
  void load_objective(const RationalVector& cost) {
    cost_ = cost;
    zrow_.assign(s_.cols, Rational());
    value_ = Rational();
    for (std::size_t i = 0; i < s_.rows; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < s_.cols; ++j) zrow_[j] += cb * t_[i][j];
      value_ += cb * rhs_[i];
    }
    for (std::size_t j = 0; j < s_.cols; ++j) zrow_[j] -= cost_[j];
  }

  LpStatus iterate(bool blocked_artificials) {
    for (;;) {
      int enter = -1;
      for (std::size_t j = 0; j < s_.cols; ++j) {
        if (blocked_artificials && s_.artificial[j]) continue;
        if (zrow_[j].sign() < 0) {
          enter = static_cast<int>(j);
          break;  // Bland: smallest index
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      Rational best_ratio;
      for (std::size_t i = 0; i < s_.rows; ++i) {
        if (t_[i][enter].sign() <= 0) continue;
        Rational ratio = rhs_[i] / t_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    if (++pivots_ > pivot_limit_) {
      throw SolverInternalError("pivot ceiling exceeded");
    }
    const Rational p = t_[row][col];
    for (std::size_t j = 0; j < s_.cols; ++j) t_[row][j] /= p;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < s_.rows; ++i) {
      if (i == row || t_[i][col].is_zero()) continue;
      const Rational f = t_[i][col];
      for (std::size_t j = 0; j < s_.cols; ++j) t_[i][j] -= f * t_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    if (!zrow_[col].is_zero()) {
      const Rational f = zrow_[col];
      for (std::size_t j = 0; j < s_.cols; ++j) zrow_[j] -= f * t_[row][j];
      value_ -= f * rhs_[row];
    }
    basis_[row] = static_cast<int>(col);
  }

  // After phase 1, swap any artificial still in the basis for a structural
  // column when one exists in its row; an all-zero row is redundant and the
  // artificial stays basic at level zero, blocked from re-entering.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < s_.rows; ++i) {
      if (!s_.artificial[basis_[i]]) continue;
      for (std::size_t j = 0; j < s_.cols; ++j) {
        if (s_.artificial[j] || t_[i][j].is_zero()) continue;
        pivot(i, j);
        break;
      }
    }
  }

  Standard s_;
  std::vector<RationalVector> t_;
  RationalVector rhs_;
  RationalVector zrow_;
  RationalVector cost_;
  Rational value_;
  std::vector<int> basis_;
  std::size_t pivots_ = 0;
  std::size_t pivot_limit_ = 0;
};

// Exact post-solve audit of every LpSolution invariant. Cheap at desk scale,
// so it runs on every optimal solve.
void verify_optimal(const LinearProgram& lp, const LpSolution& sol) {
  const bool maximize = lp.sense() == Sense::kMaximize;
  if (dot(lp.objective(), sol.primal) != sol.objective_value) {
    throw SolverInternalError("objective value mismatch");
  }
  Rational dual_obj;
  for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
    const LpConstraint& c = lp.constraints()[i];
    const Rational act = dot(c.coeffs, sol.primal);
    const bool tight = act == c.rhs;
    switch (c.rel) {
      case Relation::kLe:
        if (act > c.rhs) throw SolverInternalError("primal infeasible (<=)");
        if (maximize ? sol.dual[i].sign() < 0 : sol.dual[i].sign() > 0) {
          throw SolverInternalError("dual sign (<= row)");
        }
        break;
      case Relation::kGe:
        if (act < c.rhs) throw SolverInternalError("primal infeasible (>=)");
        if (maximize ? sol.dual[i].sign() > 0 : sol.dual[i].sign() < 0) {
          throw SolverInternalError("dual sign (>= row)");
        }
        break;
      case Relation::kEq:
        if (!tight) throw SolverInternalError("primal infeasible (=)");
        break;
    }
    if (!sol.dual[i].is_zero() && !tight) {
      throw SolverInternalError("complementary slackness (row)");
    }
    dual_obj += sol.dual[i] * c.rhs;
  }
  if (dual_obj != sol.objective_value) {
    throw SolverInternalError("strong duality violated");
  }
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational aty;
    for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
      aty += sol.dual[i] * lp.constraints()[i].coeffs[j];
    }
    const Rational reduced = lp.objective()[j] - aty;  // c_j - A^T y
    if (lp.bounds()[j] == VarBound::kFree) {
      if (!reduced.is_zero()) throw SolverInternalError("dual infeasible (free var)");
    } else {
      if (sol.primal[j].sign() < 0) throw SolverInternalError("negative variable");
      if (maximize ? reduced.sign() > 0 : reduced.sign() < 0) {
        throw SolverInternalError("dual infeasible");
      }
      if (!sol.primal[j].is_zero() && !reduced.is_zero()) {
        throw SolverInternalError("complementary slackness (column)");
      }
    }
  }
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  Tableau tab(standardize(lp));
  LpSolution sol;
  sol.status = tab.run();
  if (sol.status != LpStatus::kOptimal) return sol;

  const Standard& s = tab.standard();
  const RationalVector cols = tab.column_values();
  sol.primal.resize(lp.num_vars());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    sol.primal[j] = cols[s.var_cols[j].first];
    if (s.var_cols[j].second >= 0) sol.primal[j] -= cols[s.var_cols[j].second];
  }
  sol.objective_value = s.negated ? -tab.value() : tab.value();

  const RationalVector y = tab.equality_duals();
  sol.dual.resize(lp.num_constraints());
  for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
    sol.dual[i] = Rational(s.row_sign[i]) * y[i];
    if (s.negated) sol.dual[i] = -sol.dual[i];
  }

  sol.basis = tab.basis();
  std::sort(sol.basis.begin(), sol.basis.end());
  verify_optimal(lp, sol);
  return sol;
}

LpSolution optimize_over_optimal_face(const LinearProgram& lp,
                                      const RationalVector& secondary,
                                      Sense sense) {
  LpSolution first = solve(lp);
  if (first.status != LpStatus::kOptimal) {
    throw std::logic_error("optimize_over_optimal_face: base program not optimal");
  }
  LinearProgram face(sense, secondary);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) face.set_bound(j, lp.bounds()[j]);
  for (const LpConstraint& c : lp.constraints()) face.add_constraint(c.coeffs, c.rel, c.rhs);
  face.add_constraint(lp.objective(), Relation::kEq, first.objective_value);
  return solve(face);
}

std::pair<Rational, Rational> functional_range_over_optimal_face(
    const LinearProgram& lp, const RationalVector& functional) {
  LpSolution lo = optimize_over_optimal_face(lp, functional, Sense::kMinimize);
  LpSolution hi = optimize_over_optimal_face(lp, functional, Sense::kMaximize);
  if (lo.status != LpStatus::kOptimal || hi.status != LpStatus::kOptimal) {
    throw std::domain_error("functional unbounded over the optimal face");
  }
  return {lo.objective_value, hi.objective_value};
}

}  // namespace tug
