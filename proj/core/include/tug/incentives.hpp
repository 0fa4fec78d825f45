#ifndef TUG_INCENTIVES_HPP
#define TUG_INCENTIVES_HPP

#include <optional>
#include <vector>

#include "tug/charfn.hpp"
#include "tug/game.hpp"
#include "tug/homog.hpp"
#include "tug/rational.hpp"

namespace tug {

/// Payment rules evaluated on the reported game.
///   - marginal(k): r_i = F(kx) - F(kx - e_i), the discrete marginal of one
///     unit of type i; may run a budget deficit equal to the discrete Euler
///     gap, which is surfaced, never redistributed.
///   - shapley_of_cover: Shapley value of S -> F(1_S).
///   - core_lex_min: lexicographically smallest point of the core of
///     S -> F(1_S); fails explicitly if that core is empty.
struct PaymentRule {
  enum class Kind { kMarginalContribution, kShapleyOfCover, kCoreSelection };
  Kind kind = Kind::kMarginalContribution;
  long k = 1;

  static PaymentRule marginal(long k) { return {Kind::kMarginalContribution, k}; }
  static PaymentRule shapley_of_cover() { return {Kind::kShapleyOfCover, 1}; }
  static PaymentRule core_lex_min() { return {Kind::kCoreSelection, 1}; }
};

class RuleNotApplicableError : public std::runtime_error {
 public:
  explicit RuleNotApplicableError(const std::string& what) : std::runtime_error(what) {}
};

/// z maximizes total reported utility; m_i = reported direct utility - r_i,
/// per capita; realized_i = true direct utility - m_i. Books balance up to
/// the surfaced deficit: sum_i m_i x_i + deficit = 0 exactly, with deficit
/// = sum_i r_i x_i - F_reported(x) (zero for the efficient rules).
struct MechanismOutcome {
  std::vector<AssignmentColumn> columns;
  RationalVector assignment;
  RationalVector payoffs;    // r from the rule
  RationalVector transfers;  // m
  RationalVector realized;   // true utility net of transfers, per capita
  Rational reported_value;   // F_reported(x)
  Rational deficit;
};

/// `true_game` and `reported_game` must share structure (same communities and
/// profile counts); they differ only in member utilities.
MechanismOutcome mechanism_outcome(const CommunityGame& true_game,
                                   const CommunityGame& reported_game, const PaymentRule& rule,
                                   const RationalVector& x);

/// Deterministic misreport family for one utility row: 2u, u/2, the zero
/// row, the reversed row, and per-entry bumps u +- delta e_a for delta in
/// {1, 1/2}, clamped at zero entrywise. User rows are appended verbatim.
std::vector<RationalVector> misreport_candidates(const RationalVector& row,
                                                 const std::vector<RationalVector>& extra = {});

struct MisreportSearch {
  Rational best_gain;           // <= 0 means no profitable candidate
  int best_candidate = -1;      // index into the evaluated family
  RationalVector best_row;
  MechanismOutcome truthful;
  MechanismOutcome best;
};

/// A community-game player's utility row: its member utilities concatenated
/// over the communities containing it, in community/profile order.
RationalVector player_row(const CommunityGame& g, int player);
CommunityGame with_player_row(const CommunityGame& g, int player, const RationalVector& row);

MisreportSearch best_misreport(const CommunityGame& true_game, int player,
                               const PaymentRule& rule, const RationalVector& x,
                               const std::vector<RationalVector>& extra = {});

/// Normal-form front end: the reported game is re-derived from the reported
/// utility matrix, and true member utilities are re-evaluated through the
/// derived profiles' provenance.
MisreportSearch best_misreport(const NormalFormGame& true_game, CharFnMode mode,
                               const OutsiderPolicy& policy, int player, const PaymentRule& rule,
                               const RationalVector& x,
                               const std::vector<RationalVector>& extra = {});

struct IcVerdict {
  int player = 0;
  bool compatible_within_family = false;
  Rational best_gain;
  RationalVector witness;  // best candidate row when gain > 0
};

std::vector<IcVerdict> incentive_compatibility(const CommunityGame& true_game,
                                               const PaymentRule& rule, const RationalVector& x,
                                               const std::vector<RationalVector>& extra = {});
std::vector<IcVerdict> incentive_compatibility(const NormalFormGame& true_game, CharFnMode mode,
                                               const OutsiderPolicy& policy,
                                               const PaymentRule& rule, const RationalVector& x,
                                               const std::vector<RationalVector>& extra = {});

/// H'(U)(D) = max of the perturbation functional over the assignment-side
/// optimal face. `delta_totals` gives the per-profile change of each
/// community's total utility, aligned with the game's communities.
Rational directional_derivative_assignment(const CommunityGame& g, const RationalVector& x,
                                           const std::vector<RationalVector>& delta_totals);

/// Utility-weight fixed point: iterate gamma <- M(gamma) with the canonical
/// saddle of the gamma-weighted game; m_i(gamma) is that saddle's transfer.
/// Convergence is not guaranteed and the status is reported honestly.
struct NtuOptions {
  Rational tolerance = Rational(1, 1000000000);
  long max_iterations = 10000;
  bool damping = false;  // gamma <- (gamma + M(gamma)) / 2
};

enum class NtuStatus { kConverged, kMaxIterations, kCycleDetected };

struct NtuResult {
  NtuStatus status = NtuStatus::kMaxIterations;
  RationalVector weights;
  RationalVector transfers;
  long iterations = 0;
};

NtuResult ntu_fixed_point(const CommunityGame& g, const RationalVector& x,
                          const RationalVector& gamma0, const NtuOptions& options = {});

}  // namespace tug

#endif  // TUG_INCENTIVES_HPP
