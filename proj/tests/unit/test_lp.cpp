#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "tug/lp.hpp"

using namespace tug;
using tug::testing::R;
using tug::testing::vec;

namespace {

// Independent exact audit used by the random sweep: recomputes feasibility,
// duality and slackness directly from the original program, without touching
// the solver's own verification path.
void audit(const LinearProgram& lp, const LpSolution& sol) {
  REQUIRE(sol.status == LpStatus::kOptimal);
  const bool maximize = lp.sense() == Sense::kMaximize;
  CHECK(dot(lp.objective(), sol.primal) == sol.objective_value);
  Rational dual_value;
  for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
    const auto& c = lp.constraints()[i];
    const Rational act = dot(c.coeffs, sol.primal);
    if (c.rel == Relation::kLe) CHECK(act <= c.rhs);
    if (c.rel == Relation::kGe) CHECK(act >= c.rhs);
    if (c.rel == Relation::kEq) CHECK(act == c.rhs);
    if (!sol.dual[i].is_zero()) CHECK(act == c.rhs);
    dual_value += sol.dual[i] * c.rhs;
  }
  CHECK(dual_value == sol.objective_value);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational aty;
    for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
      aty += sol.dual[i] * lp.constraints()[i].coeffs[j];
    }
    const Rational reduced = lp.objective()[j] - aty;
    if (lp.bounds()[j] == VarBound::kFree) {
      CHECK(reduced == R(0));
    } else {
      CHECK(sol.primal[j] >= R(0));
      if (maximize) {
        CHECK(reduced <= R(0));
      } else {
        CHECK(reduced >= R(0));
      }
      if (!sol.primal[j].is_zero()) CHECK(reduced == R(0));
    }
  }
}

}  // namespace

TEST_CASE("simplex vertex: max x1+x2 with x1+x2 <= 1") {
  LinearProgram lp(Sense::kMaximize, vec({R(1), R(1)}));
  lp.add_constraint(vec({R(1), R(1)}), Relation::kLe, R(1));
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == R(1));
  audit(lp, sol);
}

TEST_CASE("infeasible: x1 <= -1 with x1 >= 0") {
  LinearProgram lp(Sense::kMaximize, vec({R(1)}));
  lp.add_constraint(vec({R(1)}), Relation::kLe, R(-1));
  CHECK(solve(lp).status == LpStatus::kInfeasible);
}

TEST_CASE("unbounded: max x1 with no constraints") {
  LinearProgram lp(Sense::kMaximize, vec({R(1)}));
  CHECK(solve(lp).status == LpStatus::kUnbounded);
}

TEST_CASE("minimization with mixed rows and a free variable") {
  // min x1 + 2 x2  s.t.  x1 + x2 = 10, x1 - x2 <= 4, x1 >= 2; x2 free.
  // Substituting x2 = 10 - x1 gives 20 - x1 with x1 <= 7: optimum (7, 3).
  LinearProgram lp(Sense::kMinimize, vec({R(1), R(2)}));
  lp.set_bound(1, VarBound::kFree);
  lp.add_constraint(vec({R(1), R(1)}), Relation::kEq, R(10));
  lp.add_constraint(vec({R(1), R(-1)}), Relation::kLe, R(4));
  lp.add_constraint(vec({R(1), R(0)}), Relation::kGe, R(2));
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.primal == vec({R(7), R(3)}));
  CHECK(sol.objective_value == R(13));
  audit(lp, sol);
}

TEST_CASE("negative rhs rows are handled") {
  // max x1 s.t. -x1 >= -3  (i.e. x1 <= 3)
  LinearProgram lp(Sense::kMaximize, vec({R(1)}));
  lp.add_constraint(vec({R(-1)}), Relation::kGe, R(-3));
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == R(3));
  audit(lp, sol);
}

TEST_CASE("optimal face probing") {
  LinearProgram lp(Sense::kMaximize, vec({R(1), R(1)}));
  lp.add_constraint(vec({R(1), R(1)}), Relation::kLe, R(1));

  SUBCASE("secondary max x1 over the face") {
    const LpSolution sol = optimize_over_optimal_face(lp, vec({R(1), R(0)}), Sense::kMaximize);
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.objective_value == R(1));
  }
  SUBCASE("secondary min x1 over the face") {
    const LpSolution sol = optimize_over_optimal_face(lp, vec({R(1), R(0)}), Sense::kMinimize);
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.objective_value == R(0));
  }
  SUBCASE("functional range over the face") {
    const auto [lo, hi] = functional_range_over_optimal_face(lp, vec({R(1), R(0)}));
    CHECK(lo == R(0));
    CHECK(hi == R(1));
  }
}

TEST_CASE("singleton face: min equals max") {
  // max x1 + 2 x2 with x1 + x2 <= 1 has the unique optimum (0, 1).
  LinearProgram lp(Sense::kMaximize, vec({R(1), R(2)}));
  lp.add_constraint(vec({R(1), R(1)}), Relation::kLe, R(1));
  const auto [lo, hi] = functional_range_over_optimal_face(lp, vec({R(1), R(0)}));
  CHECK(lo == hi);
  CHECK(lo == R(0));
}

TEST_CASE("glove dual face: r1 ranges over [0, 1]") {
  // min r1 + r2 s.t. r1 >= 0, r2 >= 0, r1 + r2 >= 1 over free variables;
  // the optimal face is the segment between (0,1) and (1,0).
  LinearProgram lp(Sense::kMinimize, vec({R(1), R(1)}));
  lp.set_bound(0, VarBound::kFree);
  lp.set_bound(1, VarBound::kFree);
  lp.add_constraint(vec({R(1), R(0)}), Relation::kGe, R(0));
  lp.add_constraint(vec({R(0), R(1)}), Relation::kGe, R(0));
  lp.add_constraint(vec({R(1), R(1)}), Relation::kGe, R(1));
  const auto [lo, hi] = functional_range_over_optimal_face(lp, vec({R(1), R(0)}));
  CHECK(lo == R(0));
  CHECK(hi == R(1));
}

TEST_CASE("determinism: identical inputs give identical bases") {
  testing::RationalSource src(11);
  for (int round = 0; round < 20; ++round) {
    const int n = static_cast<int>(src.integer(1, 4));
    const int m = static_cast<int>(src.integer(1, 4));
    RationalVector obj;
    for (int j = 0; j < n; ++j) obj.push_back(src.signed_value());
    LinearProgram lp(src.integer(0, 1) ? Sense::kMaximize : Sense::kMinimize, obj);
    for (int j = 0; j < n; ++j) {
      if (src.integer(0, 3) == 0) lp.set_bound(static_cast<std::size_t>(j), VarBound::kFree);
    }
    for (int i = 0; i < m; ++i) {
      RationalVector row;
      for (int j = 0; j < n; ++j) row.push_back(src.signed_value());
      const Relation rel[] = {Relation::kLe, Relation::kEq, Relation::kGe};
      lp.add_constraint(row, rel[src.integer(0, 2)], src.signed_value());
    }
    const LpSolution a = solve(lp);
    const LpSolution b = solve(lp);
    CHECK(a.status == b.status);
    if (a.status == LpStatus::kOptimal) {
      CHECK(a.basis == b.basis);
      CHECK(a.primal == b.primal);
      CHECK(a.dual == b.dual);
      audit(lp, a);
    }
  }
}

TEST_CASE("random sweep: strong duality and slackness hold exactly") {
  testing::RationalSource src(4242);
  int optimal_count = 0;
  for (int round = 0; round < 120; ++round) {
    const int n = static_cast<int>(src.integer(1, 5));
    const int m = static_cast<int>(src.integer(0, 5));
    RationalVector obj;
    for (int j = 0; j < n; ++j) obj.push_back(src.signed_value());
    LinearProgram lp(src.integer(0, 1) ? Sense::kMaximize : Sense::kMinimize, obj);
    for (int j = 0; j < n; ++j) {
      if (src.integer(0, 4) == 0) lp.set_bound(static_cast<std::size_t>(j), VarBound::kFree);
    }
    for (int i = 0; i < m; ++i) {
      RationalVector row;
      for (int j = 0; j < n; ++j) row.push_back(src.signed_value());
      const Relation rel[] = {Relation::kLe, Relation::kEq, Relation::kGe};
      lp.add_constraint(row, rel[src.integer(0, 2)], src.signed_value());
    }
    const LpSolution sol = solve(lp);  // internal verification runs here
    if (sol.status == LpStatus::kOptimal) {
      audit(lp, sol);
      ++optimal_count;
    }
  }
  CHECK(optimal_count > 10);
}

TEST_CASE("Beale's cycling program terminates at the right optimum") {
  // Degenerate program that cycles under the classic most-negative pivot
  // choice; Bland's rule walks straight through it.
  LinearProgram lp(Sense::kMinimize, vec({R(-3, 4), R(150), R(-1, 50), R(6)}));
  lp.add_constraint(vec({R(1, 4), R(-60), R(-1, 25), R(9)}), Relation::kLe, R(0));
  lp.add_constraint(vec({R(1, 2), R(-90), R(-1, 50), R(3)}), Relation::kLe, R(0));
  lp.add_constraint(vec({R(0), R(0), R(1), R(0)}), Relation::kLe, R(1));
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective_value == R(-1, 20));
  audit(lp, sol);
}

TEST_CASE("degenerate face collapses to a vertex") {
  // x1 <= 0 pins the whole feasible set of max x1 to a single point.
  LinearProgram lp(Sense::kMaximize, vec({R(1), R(0)}));
  lp.add_constraint(vec({R(1), R(0)}), Relation::kLe, R(0));
  lp.add_constraint(vec({R(0), R(1)}), Relation::kLe, R(0));
  const auto [lo, hi] = functional_range_over_optimal_face(lp, vec({R(0), R(1)}));
  CHECK(lo == hi);
}
