#ifndef TUG_LP_HPP
#define TUG_LP_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tug/rational.hpp"

namespace tug {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLe, kEq, kGe };
enum class VarBound { kNonNegative, kFree };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

/// Thrown when the solver breaks one of its own exact invariants (strong
/// duality, complementary slackness, pivot ceiling). Indicates a bug, never
/// bad input; the CLI maps it to exit code 3.
class SolverInternalError : public std::logic_error {
 public:
  explicit SolverInternalError(const std::string& what) : std::logic_error(what) {}
};

/// Thrown when an enumeration-based operation would exceed its documented
/// size guard (e.g. the equal-treatment core). CLI exit code 2.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

struct LpConstraint {
  RationalVector coeffs;
  Relation rel = Relation::kLe;
  Rational rhs;
};

/// A dense linear program over rationals. Variables are nonnegative unless
/// marked free; rows may mix <=, =, >=.
class LinearProgram {
 public:
  LinearProgram(Sense sense, RationalVector objective);

  void set_bound(std::size_t var, VarBound bound);
  void add_constraint(RationalVector coeffs, Relation rel, Rational rhs);

  Sense sense() const { return sense_; }
  const RationalVector& objective() const { return objective_; }
  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<LpConstraint>& constraints() const { return constraints_; }
  const std::vector<VarBound>& bounds() const { return bounds_; }

 private:
  Sense sense_;
  RationalVector objective_;
  std::vector<VarBound> bounds_;
  std::vector<LpConstraint> constraints_;
};

/// Exact solve result. When status is kOptimal the following hold exactly
/// (verified after every solve, SolverInternalError otherwise):
///   - primal is feasible and objective_value = c . primal;
///   - dual is feasible with objective_value = b . dual (strong duality);
///   - complementary slackness: dual_i != 0 implies row i is tight, and
///     primal_j != 0 implies the j-th dual constraint is tight.
/// Dual sign convention: for a maximize program, <= rows have dual >= 0 and
/// >= rows have dual <= 0; for minimize the signs flip; = rows are free.
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  RationalVector primal;
  RationalVector dual;
  Rational objective_value;
  std::vector<int> basis;  // solver column labels; deterministic per input
};

/// Two-phase simplex with Bland's rule. Deterministic: identical inputs give
/// identical bases and solutions. Terminates on every input; a generous pivot
/// ceiling guards against bugs and throws SolverInternalError if ever hit.
LpSolution solve(const LinearProgram& lp);

/// Optimizes `secondary` over the optimal face of `lp` (the argmax set),
/// implemented by appending the equality objective . x = optimal value.
/// Requires solve(lp) to be optimal. The returned dual has one extra entry
/// for the appended row.
LpSolution optimize_over_optimal_face(const LinearProgram& lp,
                                      const RationalVector& secondary,
                                      Sense sense);

/// Exact (min, max) of a linear functional over the optimal face of `lp`.
/// Throws std::domain_error if the functional is unbounded on the face.
std::pair<Rational, Rational> functional_range_over_optimal_face(
    const LinearProgram& lp, const RationalVector& functional);

}  // namespace tug

#endif  // TUG_LP_HPP
