#ifndef TUG_EXCHANGE_HPP
#define TUG_EXCHANGE_HPP

#include <string>
#include <utility>
#include <vector>

#include "tug/game.hpp"
#include "tug/homog.hpp"
#include "tug/rational.hpp"

namespace tug {

/// One type's trading possibilities: per activity a commodity vector of
/// excess demands (positive = buy, negative = sell) and a linear utility
/// vector over commodities. Some activity must be the all-zero no-trade.
struct ExchangeType {
  std::vector<RationalVector> trades;  // activities x commodities
  RationalVector values;               // one per commodity, >= 0
};

struct ExchangeEconomy {
  int num_commodities = 0;
  std::vector<ExchangeType> types;

  int num_types() const { return static_cast<int>(types.size()); }
};

std::vector<std::string> validate(const ExchangeEconomy& e);

/// Utility of one activity for a type: values . trade column.
Rational activity_value(const ExchangeEconomy& e, int type, std::size_t activity);

/// F_V(x): maximize sum_i x_i (v_i E_i) . z_i over per-capita mixtures z_i in
/// the unit simplex, subject to exact market clearing sum_i x_i E_i z_i = 0.
/// The no-trade activity keeps it feasible with F >= 0.
Rational market_value(const ExchangeEconomy& e, const RationalVector& x);

/// GainsSystem view of the economy: the payoff face carries the per-type
/// values r as coordinates 0..n-1 and the commodity prices p as auxiliary
/// coordinates n..n+l-1, tied by r_i >= (v_i - p) . E_i(a) for every
/// activity and r . x = F(x).
class ExchangeGains : public GainsSystem {
 public:
  explicit ExchangeGains(ExchangeEconomy economy);

  int num_types() const override { return economy_.num_types(); }
  Rational value(const RationalVector& x) const override;
  PayoffFace payoff_face(const RationalVector& x) const override;

  const ExchangeEconomy& economy() const { return economy_; }

 private:
  ExchangeEconomy economy_;
};

/// Market-clearing mixtures, prices from the clearing duals, per-type values
/// and money transfers. Exactly: sum_i x_i E_i z_i = 0, r . x = F(x),
/// m_i = v_i . E_i z_i - r_i with sum_i m_i x_i = 0, and every used activity
/// maximizes (v_i - p) . E_i(a).
///
/// Prices can form a face rather than a point (e.g. when every trade column
/// is balanced the level is free); the canonical selection takes the
/// range-midpoint payoffs when they lie on the face (lex-min otherwise) and
/// then the lex-min nonnegative prices compatible with them. Use
/// price_range() to see the whole face.
struct WalrasOutcome {
  std::vector<RationalVector> mixtures;  // per type, over its activities
  RationalVector prices;
  RationalVector payoffs;    // r, per capita; 0 for x_i = 0 types
  RationalVector transfers;  // m; 0 for x_i = 0 types
  Rational value;
};

WalrasOutcome walras(const ExchangeEconomy& e, const RationalVector& x);

std::pair<Probe, Probe> price_range(const ExchangeEconomy& e, const RationalVector& x,
                                    int commodity);

/// v(S) = market value with clearing restricted to the members of S.
CoalitionGame exchange_characteristic(const ExchangeEconomy& e);

struct ExchangeEulerReport {
  GapSweep sweep;
  Differentiability differentiability;
  bool characteristic_totally_balanced = false;
};

/// Euler gaps and differentiability of F_V itself, plus total balancedness
/// of the derived coalition game.
ExchangeEulerReport exchange_euler_analysis(const ExchangeEconomy& e, const RationalVector& x,
                                            long k_max);

}  // namespace tug

#endif  // TUG_EXCHANGE_HPP
