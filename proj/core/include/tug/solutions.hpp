#ifndef TUG_SOLUTIONS_HPP
#define TUG_SOLUTIONS_HPP

#include <optional>
#include <vector>

#include "tug/game.hpp"
#include "tug/homog.hpp"
#include "tug/polytope.hpp"
#include "tug/rational.hpp"

namespace tug {

/// Per-type Shapley values; the sum equals v(I) exactly.
struct ShapleyResult {
  RationalVector values;
};

ShapleyResult shapley_value(const CoalitionGame& g);

/// Shapley value of the subgame on S, reported in the original indexing
/// (zero outside S). The values sum to v(S) exactly.
ShapleyResult shapley_subgame(const CoalitionGame& g, Coalition s);

/// For every nonempty S: the subgame marginals sum to v(S) (the efficiency /
/// Euler identity along rays through coalition indicators). Also reports the
/// grand-coalition marginal vector.
struct ShapleyEulerReport {
  bool all_hold = true;
  std::vector<Coalition> failures;
  RationalVector grand_marginals;
};

ShapleyEulerReport shapley_euler_identities(const CoalitionGame& g);

/// { r : r . 1_S >= v(S) for all proper nonempty S, r . 1_I = v(I) }.
/// Emptiness is decided by one feasibility solve; membership and functional
/// probing ride on the polytope.
class CorePolytope {
 public:
  CorePolytope(Polytope poly, int num_players);

  bool empty() const { return empty_; }
  int num_players() const { return num_players_; }
  const Polytope& polytope() const { return poly_; }
  bool contains(const RationalVector& r) const { return poly_.contains(r); }
  std::pair<Probe, Probe> payoff_range(int player) const;
  std::optional<RationalVector> lex_min_point() const { return poly_.lex_min(); }

 private:
  Polytope poly_;
  int num_players_;
  bool empty_;
};

CorePolytope core(const CoalitionGame& g);

/// Balanced iff the cover at I equals v(I) iff the core is nonempty; both
/// routes are computed and cross-checked.
bool is_balanced(const CoalitionGame& g);
bool is_totally_balanced(const CoalitionGame& g);

/// Equal-treatment core at population k * 1: r . k1 = F(k1) and
/// r . x >= F(x) for every integer vector 0 <= x <= k1, x != 0. Guarded:
/// (k+1)^n <= 100000 or SizeGuardError.
CorePolytope equal_treatment_core(const GainsSystem& gains, long k);
CorePolytope equal_treatment_core(const CommunityGame& g, long k);

/// Exact polytope equality of the equal-treatment core at k1 with the
/// payoff face at 1, by mutual H-representation inclusion.
bool core_equivalence(const GainsSystem& gains, long k);
bool core_equivalence(const CommunityGame& g, long k);

/// Builds the game S -> F(1_S); when the payoff face at 1 is a singleton,
/// compares its gradient with the Shapley value of that game. The comparison
/// can fail; the certificate is reported, never suppressed.
struct ShapleyGradientReport {
  bool applicable = false;  // payoff face at 1 is a singleton
  bool equal = false;
  RationalVector gradient;
  RationalVector shapley;
};

ShapleyGradientReport shapley_gradient_comparison(const CommunityGame& g);

}  // namespace tug

#endif  // TUG_SOLUTIONS_HPP
