#include "tug/polytope.hpp"

#include <stdexcept>

namespace tug {

Polytope::Polytope(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("Polytope: zero dimension");
}

void Polytope::add(RationalVector coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != dim_) throw std::invalid_argument("Polytope::add: width mismatch");
  rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

// Probing a thin system (few coordinates, many rows) through the dual keeps
// the simplex tableau at dim rows: one dual variable per polytope row, dim
// equality constraints. For min f.x over { A_ge x >= b, A_le x <= b,
// A_eq x = b } with free x the dual is
//   max  b~ . y   s.t.  A~^T y = f,  y_ge >= 0, y_le <= 0, y_eq free,
// and dual-unbounded means primal-infeasible while dual-infeasible means the
// primal is infeasible or unbounded (disambiguated by a feasibility probe).
Probe Polytope::probe_dual(const RationalVector& f, Sense sense) const {
  RationalVector goal = f;
  if (sense == Sense::kMaximize) {
    for (Rational& v : goal) v = -v;
  }
  if (rows_.empty()) {
    bool zero = true;
    for (const Rational& v : goal) zero = zero && v.is_zero();
    if (zero) return {LpStatus::kOptimal, Rational()};
    return {LpStatus::kUnbounded, Rational()};
  }
  RationalVector dual_obj;
  dual_obj.reserve(rows_.size());
  for (const LpConstraint& c : rows_) {
    dual_obj.push_back(c.rel == Relation::kLe ? -c.rhs : c.rhs);
  }
  LinearProgram dual(Sense::kMaximize, dual_obj);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].rel == Relation::kEq) dual.set_bound(i, VarBound::kFree);
  }
  for (std::size_t j = 0; j < dim_; ++j) {
    RationalVector col(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      // Le rows enter with flipped sign so every dual variable is >= 0.
      col[i] = rows_[i].rel == Relation::kLe ? -rows_[i].coeffs[j] : rows_[i].coeffs[j];
    }
    Rational rhs = goal[j];
    dual.add_constraint(std::move(col), Relation::kEq, std::move(rhs));
  }
  const LpSolution sol = solve(dual);
  switch (sol.status) {
    case LpStatus::kOptimal: {
      Rational value = sol.objective_value;
      if (sense == Sense::kMaximize) value = -value;
      return {LpStatus::kOptimal, std::move(value)};
    }
    case LpStatus::kUnbounded:
      return {LpStatus::kInfeasible, Rational()};
    case LpStatus::kInfeasible:
      return {empty() ? LpStatus::kInfeasible : LpStatus::kUnbounded, Rational()};
  }
  return {LpStatus::kInfeasible, Rational()};
}

bool Polytope::empty() const {
  // Feasibility through the dual of "min 0": always feasible at zero, so an
  // unbounded dual value certifies primal infeasibility (Farkas).
  const Probe p = probe_dual(RationalVector(dim_), Sense::kMinimize);
  return p.status == LpStatus::kInfeasible;
}

bool Polytope::contains(const RationalVector& point) const {
  if (point.size() != dim_) throw std::invalid_argument("Polytope::contains: width mismatch");
  for (const LpConstraint& c : rows_) {
    const Rational lhs = dot(c.coeffs, point);
    switch (c.rel) {
      case Relation::kLe:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kGe:
        if (lhs < c.rhs) return false;
        break;
      case Relation::kEq:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

Probe Polytope::minimize(const RationalVector& functional) const {
  if (functional.size() != dim_) throw std::invalid_argument("Polytope: functional width");
  return probe_dual(functional, Sense::kMinimize);
}

Probe Polytope::maximize(const RationalVector& functional) const {
  if (functional.size() != dim_) throw std::invalid_argument("Polytope: functional width");
  return probe_dual(functional, Sense::kMaximize);
}

std::pair<Probe, Probe> Polytope::coordinate_range(std::size_t coord) const {
  RationalVector f(dim_);
  f[coord] = Rational(1);
  return {minimize(f), maximize(f)};
}

std::optional<RationalVector> Polytope::lex_min() const {
  Polytope work = *this;
  RationalVector point(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    RationalVector f(dim_);
    f[j] = Rational(1);
    Probe p = work.minimize(f);
    if (!p.optimal()) return std::nullopt;
    point[j] = p.value;
    work.add(std::move(f), Relation::kEq, p.value);
  }
  return point;
}

bool Polytope::contains_set(const Polytope& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("contains_set: dimension mismatch");
  if (other.empty()) return true;
  for (const LpConstraint& c : rows_) {
    if (c.rel == Relation::kLe || c.rel == Relation::kEq) {
      Probe hi = other.maximize(c.coeffs);
      if (!hi.optimal() || hi.value > c.rhs) return false;
    }
    if (c.rel == Relation::kGe || c.rel == Relation::kEq) {
      Probe lo = other.minimize(c.coeffs);
      if (!lo.optimal() || lo.value < c.rhs) return false;
    }
  }
  return true;
}

bool Polytope::same_set(const Polytope& other) const {
  return contains_set(other) && other.contains_set(*this);
}

}  // namespace tug
