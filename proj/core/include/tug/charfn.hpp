#ifndef TUG_CHARFN_HPP
#define TUG_CHARFN_HPP

#include <optional>
#include <vector>

#include "tug/game.hpp"
#include "tug/rational.hpp"

namespace tug {

/// How a coalition's utility table is evaluated when utilities depend on
/// outsiders' actions and the coalition has exclusive access to its own
/// activities (|S| >= 3 under property rights). Exclusive access does not
/// pin the outsiders' behavior down by itself, so all three readings are
/// selectable.
enum class OutsiderRule { kOptimistic, kBaseline, kMinimax };

struct OutsiderPolicy {
  OutsiderRule rule = OutsiderRule::kOptimistic;
  std::vector<int> baseline;  // one action per player; used by kBaseline
};

/// kStandard: minimax value for every coalition. kPropertyRights: minimax for
/// |S| <= 2, exclusive-access value for |S| >= 3 (the two agree at S = I).
enum class CharFnMode { kStandard, kPropertyRights };

struct MinimaxResult {
  Rational value;
  RationalVector coalition_mix;  // over joint actions of S
  RationalVector opponent_mix;   // over joint actions of I\S; empty when S = I
};

/// Value of the zero-sum matrix game between S (correlating over its joint
/// actions) and I\S, payoff sum of S's utilities. S = I returns the plain
/// maximum over profiles with a point-mass mix on the first maximizer.
MinimaxResult minimax_value(const NormalFormGame& g, Coalition s);

CoalitionGame characteristic_function(const NormalFormGame& g, CharFnMode mode,
                                      const OutsiderPolicy& policy = {});

/// Provenance of one derived community profile: a distribution over full
/// action profiles plus the split convention. Lets incentives re-evaluate a
/// reported-game profile under true utilities.
struct ProfileProvenance {
  RationalVector distribution;  // over full profiles of the normal form
  bool equal_split = false;     // member utilities are the equal split of the total
};

struct DerivedCommunity {
  CommunityGame game;
  std::vector<std::vector<ProfileProvenance>> provenance;  // [community][profile]
};

/// Builds the community game the gains program runs on. |S| >= 3 communities
/// under property rights carry full profile tables with outsiders resolved by
/// the policy; every other coalition carries a single profile at its minimax
/// value, member utilities from the canonical equilibrium pair (equal split
/// of the value when the optimizer leaves them undetermined).
DerivedCommunity derive_community(const NormalFormGame& g, CharFnMode mode,
                                  const OutsiderPolicy& policy = {});

CommunityGame community_from_normal_form(const NormalFormGame& g, CharFnMode mode,
                                         const OutsiderPolicy& policy = {});

/// Re-evaluates the member utilities of a derived community under a
/// different utility matrix (same shape as the deriving game).
CommunityGame reevaluate_community(const DerivedCommunity& derived,
                                   const NormalFormGame& utilities);

/// Balanced-collection program: sup { sum a_k v(S_k) : a >= 0,
/// sum a_k 1_{S_k} = 1_S } with one column per nonempty subset of S.
Rational superadditive_cover_value(const CoalitionGame& g, Coalition s);

struct SuperadditivityReport {
  bool superadditive = true;
  Coalition witness_s = 0;  // violating disjoint pair when not superadditive
  Coalition witness_t = 0;
};

SuperadditivityReport is_superadditive(const CoalitionGame& g);

/// True iff the game equals its cover on every coalition (totally balanced).
bool is_self_concavifying(const CoalitionGame& g);

/// The total c when sum_i u_i(a) is the same for every profile a.
std::optional<Rational> constant_sum_total(const NormalFormGame& g);

}  // namespace tug

#endif  // TUG_CHARFN_HPP
