#ifndef TUG_POLYTOPE_HPP
#define TUG_POLYTOPE_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tug/lp.hpp"
#include "tug/rational.hpp"

namespace tug {

/// Outcome of a linear probe over a polyhedron.
struct Probe {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;  // meaningful only when status == kOptimal

  bool optimal() const { return status == LpStatus::kOptimal; }
};

/// An H-representation polyhedron over free real coordinates, with exact LP
/// probing. Used for subdifferentials, optimal faces, cores and the
/// equal-treatment core; all set questions (emptiness, membership, inclusion,
/// equality, coordinate ranges) reduce to solves.
class Polytope {
 public:
  explicit Polytope(std::size_t dim);

  void add(RationalVector coeffs, Relation rel, Rational rhs);

  std::size_t dim() const { return dim_; }
  const std::vector<LpConstraint>& constraints() const { return rows_; }

  bool empty() const;
  bool contains(const RationalVector& point) const;

  Probe minimize(const RationalVector& functional) const;
  Probe maximize(const RationalVector& functional) const;
  std::pair<Probe, Probe> coordinate_range(std::size_t coord) const;

  /// Sequential coordinate minimization: pins coordinate 0 to its minimum,
  /// then coordinate 1, and so on. Deterministic canonical point. Returns
  /// nullopt when the set is empty or some coordinate is unbounded below.
  std::optional<RationalVector> lex_min() const;

  /// True iff `other` is a subset (H-representation validity: every
  /// constraint of *this holds throughout `other`). An empty `other` is
  /// contained in everything.
  bool contains_set(const Polytope& other) const;
  bool same_set(const Polytope& other) const;

 private:
  Probe probe_dual(const RationalVector& f, Sense sense) const;

  std::size_t dim_;
  std::vector<LpConstraint> rows_;
};

}  // namespace tug

#endif  // TUG_POLYTOPE_HPP
