#ifndef TUG_HOMOG_HPP
#define TUG_HOMOG_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "tug/game.hpp"
#include "tug/polytope.hpp"
#include "tug/rational.hpp"

namespace tug {

/// Handle over the payoff-side optimal face (the subdifferential of the gains
/// value at x). Coordinates 0..n-1 of the underlying polytope are the type
/// payoffs r; implementations may carry auxiliary coordinates after them
/// (e.g. commodity prices for exchange). Every member satisfies r . x = F(x).
class PayoffFace {
 public:
  PayoffFace(Polytope poly, int num_types, Coalition support, Rational value);

  int num_types() const { return num_types_; }
  Coalition support() const { return support_; }
  const Rational& value() const { return value_; }
  const Polytope& polytope() const { return poly_; }

  Probe min_payoff(int type) const;
  Probe max_payoff(int type) const;

  /// Exact per-coordinate test on the support: singleton iff min = max for
  /// every supported type.
  bool singleton_on_support() const;

  /// The common payoff vector when the face is a singleton on the support
  /// (off-support coordinates are reported as 0).
  std::optional<RationalVector> gradient() const;

  /// Canonical selection: sequential minimization of r_1, r_2, ... over the
  /// face. Deterministic; auxiliary coordinates are left free.
  RationalVector lex_min_payoffs() const;

  /// min of d . r over the face, d padded with zeros on auxiliary coords.
  Probe min_functional(const RationalVector& d) const;

 private:
  Polytope poly_;
  int num_types_;
  Coalition support_;
  Rational value_;
};

/// A positively homogeneous concave gains function F backed by an exact LP:
/// value at any nonnegative population and the payoff face at it. Community
/// games and exchange economies both implement this, so the Euler-gap and
/// differentiability machinery below is shared.
class GainsSystem {
 public:
  virtual ~GainsSystem() = default;
  virtual int num_types() const = 0;
  virtual Rational value(const RationalVector& x) const = 0;
  virtual PayoffFace payoff_face(const RationalVector& x) const = 0;
};

/// The gains program of a community game: variables y(S, a_S) >= 0 over the
/// community/profile pairs with S inside the support of x, constraints
/// sum_{S contains i} y = x_i, objective max sum y * (profile total).
class CommunityGains : public GainsSystem {
 public:
  explicit CommunityGains(CommunityGame game);

  int num_types() const override { return game_.num_types; }
  Rational value(const RationalVector& x) const override;
  PayoffFace payoff_face(const RationalVector& x) const override;

  const CommunityGame& game() const { return game_; }

 private:
  CommunityGame game_;
};

struct AssignmentColumn {
  std::size_t community = 0;
  std::size_t profile = 0;
};

/// Handle over the assignment-side optimal face: the optimal y of the gains
/// program, one coordinate per supported community/profile column.
class AssignmentFace {
 public:
  AssignmentFace(Polytope poly, std::vector<AssignmentColumn> columns, Rational value);

  const std::vector<AssignmentColumn>& columns() const { return columns_; }
  const Polytope& polytope() const { return poly_; }
  const Rational& value() const { return value_; }

  RationalVector lex_min() const;
  Probe maximize(const RationalVector& column_functional) const;
  bool singleton() const;

 private:
  Polytope poly_;
  std::vector<AssignmentColumn> columns_;
  Rational value_;
};

AssignmentFace assignment_face(const CommunityGame& g, const RationalVector& x);

/// F(x): optimal value of the gains program. Requires a valid game and a
/// valid population whose supported singletons exist (validate() enforces
/// both). F of the all-zero vector is 0.
Rational gains_value(const CommunityGame& g, const RationalVector& x);

PayoffFace subdifferential(const CommunityGame& g, const RationalVector& x);

/// A saddle: canonical payoffs r (lex-min of the payoff face), canonical
/// assignment y (lex-min of the assignment face), per-capita money transfers
/// m_i = direct utility of i under y minus r_i. Exactly: r . x = F(x) = total
/// direct utility, and sum_i m_i x_i = 0.
struct SaddlePoint {
  RationalVector payoffs;     // r, length n; 0 on off-support types
  RationalVector assignment;  // y, aligned with columns
  std::vector<AssignmentColumn> columns;
  RationalVector transfers;   // m, length n; 0 on off-support types
  Rational value;
};

SaddlePoint saddle_point(const CommunityGame& g, const RationalVector& x);

/// Per-capita direct utility of each type under assignment y.
RationalVector direct_utilities(const CommunityGame& g, const RationalVector& x,
                                const std::vector<AssignmentColumn>& columns,
                                const RationalVector& y);

/// The minimization side read through the same program: returns F(x) after
/// asserting the saddle chain r . x = F(x) = total direct utility of the
/// canonical assignment, exactly.
struct SaddleValue {
  Rational value;
  bool payoff_identity = false;
  bool assignment_identity = false;
  bool transfers_balance = false;
};

SaddleValue saddle_value_check(const CommunityGame& g, const RationalVector& x);

// --- Euler machinery, shared across gains systems ---

/// F(kx + d) - F(kx); requires kx + d >= 0 (std::domain_error otherwise).
Rational discrete_difference(const GainsSystem& gains, const RationalVector& x,
                             const RationalVector& d, long k);

/// sum_{i in supp x} x_i [F(kx) - F(kx - e_i)] - F(x); requires kx - e_i >= 0
/// for every supported i. Nonnegative and non-increasing in k. At x = 1 the
/// weights vanish and this is the plain sum of one-unit marginals.
Rational discrete_euler_gap(const GainsSystem& gains, const RationalVector& x, long k);

/// sum_{i in supp x} x_i max{ r_i : r in dF(x) } - F(x). Zero iff the face is
/// a singleton on the support; the limit of the discrete gaps.
Rational infinitesimal_euler_gap(const GainsSystem& gains, const RationalVector& x);

struct Differentiability {
  bool differentiable = false;
  std::optional<RationalVector> gradient;
};

/// Per-coordinate min = max probes over the payoff face (independent of the
/// gap computation; the equivalence is a theorem the tests cross-check).
Differentiability is_differentiable(const GainsSystem& gains, const RationalVector& x);

/// Checks sum_i x_i * (-F'(x; -e_i)) = F(x) over the support.
bool one_sided_euler_test(const GainsSystem& gains, const RationalVector& x);

struct DirectionalDerivative {
  enum class Status { kOk, kDomainExit, kUnbounded };
  Status status = Status::kOk;
  Rational value;
};

/// F'(x; d) = min{ r . d : r in dF(x) } (exact for polyhedral concave F).
/// kDomainExit when x + eps d leaves the nonnegative orthant for all eps > 0.
DirectionalDerivative directional_derivative(const GainsSystem& gains,
                                             const RationalVector& x,
                                             const RationalVector& d);

struct GapSweep {
  std::vector<Rational> discrete;  // E_1 .. E_kmax
  Rational infinitesimal;          // E_inf
  std::optional<long> stabilization_k;  // smallest k with E_k = E_inf
};

GapSweep gap_sweep(const GainsSystem& gains, const RationalVector& x, long k_max);

// CommunityGame conveniences.
Rational discrete_euler_gap(const CommunityGame& g, const RationalVector& x, long k);
Rational infinitesimal_euler_gap(const CommunityGame& g, const RationalVector& x);
Differentiability is_differentiable(const CommunityGame& g, const RationalVector& x);
bool one_sided_euler_test(const CommunityGame& g, const RationalVector& x);
DirectionalDerivative directional_derivative(const CommunityGame& g, const RationalVector& x,
                                             const RationalVector& d);
GapSweep gap_sweep(const CommunityGame& g, const RationalVector& x, long k_max);

}  // namespace tug

#endif  // TUG_HOMOG_HPP
