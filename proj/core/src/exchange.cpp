#include "tug/exchange.hpp"

#include <stdexcept>

#include "tug/charfn.hpp"
#include "tug/lp.hpp"
#include "tug/polytope.hpp"

namespace tug {

namespace {

bool is_zero_column(const RationalVector& v) {
  for (const Rational& c : v) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::size_t no_trade_activity(const ExchangeType& t) {
  for (std::size_t a = 0; a < t.trades.size(); ++a) {
    if (is_zero_column(t.trades[a])) return a;
  }
  throw std::invalid_argument("exchange type lacks a no-trade activity");
}

void check_population(const ExchangeEconomy& e, const RationalVector& x) {
  if (static_cast<int>(x.size()) != e.num_types()) {
    throw std::invalid_argument("population: length differs from type count");
  }
  for (const Rational& xi : x) {
    if (xi.sign() < 0) throw std::invalid_argument("population: negative entry");
  }
}

// Column bookkeeping for the market program: one block of simplex variables
// per supported type.
struct MarketColumns {
  std::vector<int> types;          // supported types in ascending order
  std::vector<std::size_t> start;  // column offset per supported type
  std::size_t total = 0;
};

MarketColumns market_columns(const ExchangeEconomy& e, Coalition support) {
  MarketColumns mc;
  for (int i : coalition_members(support)) {
    mc.types.push_back(i);
    mc.start.push_back(mc.total);
    mc.total += e.types[static_cast<std::size_t>(i)].trades.size();
  }
  return mc;
}

LinearProgram market_lp(const ExchangeEconomy& e, const RationalVector& x,
                        const MarketColumns& mc) {
  RationalVector obj(mc.total);
  for (std::size_t t = 0; t < mc.types.size(); ++t) {
    const int i = mc.types[t];
    const ExchangeType& type = e.types[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < type.trades.size(); ++a) {
      obj[mc.start[t] + a] = x[static_cast<std::size_t>(i)] * activity_value(e, i, a);
    }
  }
  LinearProgram lp(Sense::kMaximize, obj);
  for (std::size_t t = 0; t < mc.types.size(); ++t) {
    RationalVector row(mc.total);
    const int i = mc.types[t];
    for (std::size_t a = 0; a < e.types[static_cast<std::size_t>(i)].trades.size(); ++a) {
      row[mc.start[t] + a] = Rational(1);
    }
    lp.add_constraint(std::move(row), Relation::kEq, Rational(1));
  }
  for (int c = 0; c < e.num_commodities; ++c) {
    RationalVector row(mc.total);
    for (std::size_t t = 0; t < mc.types.size(); ++t) {
      const int i = mc.types[t];
      const ExchangeType& type = e.types[static_cast<std::size_t>(i)];
      for (std::size_t a = 0; a < type.trades.size(); ++a) {
        row[mc.start[t] + a] =
            x[static_cast<std::size_t>(i)] * type.trades[a][static_cast<std::size_t>(c)];
      }
    }
    lp.add_constraint(std::move(row), Relation::kEq, Rational());
  }
  return lp;
}

}  // namespace

std::vector<std::string> validate(const ExchangeEconomy& e) {
  std::vector<std::string> bad;
  if (e.num_commodities < 1) bad.push_back("num_commodities: must be >= 1");
  if (e.types.empty()) bad.push_back("types: at least one type required");
  if (e.num_types() > kMaxPlayers) bad.push_back("types: exceeds supported maximum 10");
  for (std::size_t i = 0; i < e.types.size(); ++i) {
    const ExchangeType& t = e.types[i];
    const std::string where = "types[" + std::to_string(i + 1) + "]";
    if (t.trades.empty()) {
      bad.push_back(where + ".trades: empty activity set");
      continue;
    }
    bool has_zero = false;
    for (std::size_t a = 0; a < t.trades.size(); ++a) {
      if (t.trades[a].size() != static_cast<std::size_t>(e.num_commodities)) {
        bad.push_back(where + ".trades[" + std::to_string(a) + "]: commodity count mismatch");
        continue;
      }
      if (is_zero_column(t.trades[a])) has_zero = true;
    }
    if (!has_zero) bad.push_back(where + ".trades: no all-zero no-trade activity");
    if (t.values.size() != static_cast<std::size_t>(e.num_commodities)) {
      bad.push_back(where + ".values: commodity count mismatch");
    } else {
      for (std::size_t c = 0; c < t.values.size(); ++c) {
        if (t.values[c].sign() < 0) {
          bad.push_back(where + ".values[" + std::to_string(c) + "]: negative");
        }
      }
    }
  }
  return bad;
}

Rational activity_value(const ExchangeEconomy& e, int type, std::size_t activity) {
  const ExchangeType& t = e.types[static_cast<std::size_t>(type)];
  return dot(t.values, t.trades[activity]);
}

ExchangeGains::ExchangeGains(ExchangeEconomy economy) : economy_(std::move(economy)) {}

Rational ExchangeGains::value(const RationalVector& x) const {
  check_population(economy_, x);
  const Coalition support = population_support(x);
  if (support == 0) return Rational();
  const MarketColumns mc = market_columns(economy_, support);
  const LpSolution sol = solve(market_lp(economy_, x, mc));
  if (sol.status != LpStatus::kOptimal) {
    throw SolverInternalError("market program must be optimal (no-trade is feasible)");
  }
  return sol.objective_value;
}

PayoffFace ExchangeGains::payoff_face(const RationalVector& x) const {
  const Rational f = value(x);
  const std::size_t n = static_cast<std::size_t>(economy_.num_types());
  const std::size_t l = static_cast<std::size_t>(economy_.num_commodities);
  Polytope poly(n + l);
  // r_i + p . E_i(a) >= v_i . E_i(a) for every type and activity; the
  // no-trade column gives r >= 0.
  for (std::size_t i = 0; i < n; ++i) {
    const ExchangeType& t = economy_.types[i];
    for (std::size_t a = 0; a < t.trades.size(); ++a) {
      RationalVector row(n + l);
      row[i] = Rational(1);
      for (std::size_t c = 0; c < l; ++c) row[n + c] = t.trades[a][c];
      poly.add(std::move(row), Relation::kGe, activity_value(economy_, static_cast<int>(i), a));
    }
  }
  RationalVector eff(n + l);
  for (std::size_t i = 0; i < n; ++i) eff[i] = x[i];
  poly.add(std::move(eff), Relation::kEq, f);
  return PayoffFace(std::move(poly), economy_.num_types(), population_support(x), f);
}

Rational market_value(const ExchangeEconomy& e, const RationalVector& x) {
  return ExchangeGains(e).value(x);
}

WalrasOutcome walras(const ExchangeEconomy& e, const RationalVector& x) {
  check_population(e, x);
  const Coalition support = population_support(x);
  if (support == 0) throw std::invalid_argument("walras: zero population");
  const ExchangeGains gains(e);

  WalrasOutcome out;
  out.value = gains.value(x);

  // Canonical mixtures: lex-min over the primal optimal face.
  const MarketColumns mc = market_columns(e, support);
  {
    const LinearProgram lp = market_lp(e, x, mc);
    Polytope face(mc.total);
    for (std::size_t j = 0; j < mc.total; ++j) {
      RationalVector ej(mc.total);
      ej[j] = Rational(1);
      face.add(std::move(ej), Relation::kGe, Rational());
    }
    for (const LpConstraint& c : lp.constraints()) face.add(c.coeffs, c.rel, c.rhs);
    face.add(lp.objective(), Relation::kEq, out.value);
    auto z = face.lex_min();
    if (!z) throw SolverInternalError("walras: primal face empty");
    out.mixtures.assign(e.types.size(), RationalVector());
    for (std::size_t t = 0; t < mc.types.size(); ++t) {
      const int i = mc.types[t];
      const std::size_t count = e.types[static_cast<std::size_t>(i)].trades.size();
      out.mixtures[static_cast<std::size_t>(i)] =
          RationalVector(z->begin() + static_cast<long>(mc.start[t]),
                         z->begin() + static_cast<long>(mc.start[t] + count));
    }
    for (std::size_t i = 0; i < e.types.size(); ++i) {
      if (out.mixtures[i].empty()) {
        out.mixtures[i].assign(e.types[i].trades.size(), Rational());
        out.mixtures[i][no_trade_activity(e.types[i])] = Rational(1);
      }
    }
  }

  // Canonical payoffs: range midpoints when they lie on the face, else the
  // lex-min selection.
  const PayoffFace face = gains.payoff_face(x);
  const std::size_t n = static_cast<std::size_t>(e.num_types());
  const std::size_t l = static_cast<std::size_t>(e.num_commodities);
  RationalVector mid(n);
  bool have_mid = true;
  for (int i : coalition_members(support)) {
    Probe lo = face.min_payoff(i);
    Probe hi = face.max_payoff(i);
    if (!lo.optimal() || !hi.optimal()) {
      have_mid = false;
      break;
    }
    mid[static_cast<std::size_t>(i)] = (lo.value + hi.value) * Rational(1, 2);
  }
  Polytope pinned = face.polytope();
  if (have_mid) {
    Polytope trial = face.polytope();
    for (int i : coalition_members(support)) {
      RationalVector row(n + l);
      row[static_cast<std::size_t>(i)] = Rational(1);
      trial.add(std::move(row), Relation::kEq, mid[static_cast<std::size_t>(i)]);
    }
    if (!trial.empty()) {
      pinned = std::move(trial);
      out.payoffs = mid;
    } else {
      have_mid = false;
    }
  }
  if (!have_mid) {
    const RationalVector lex = face.lex_min_payoffs();
    out.payoffs.assign(n, Rational());
    for (int i : coalition_members(support)) {
      RationalVector row(n + l);
      row[static_cast<std::size_t>(i)] = Rational(1);
      const Rational v = lex[static_cast<std::size_t>(i)];
      pinned.add(std::move(row), Relation::kEq, v);
      out.payoffs[static_cast<std::size_t>(i)] = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) out.payoffs[i] = Rational();
  }

  // Canonical prices: lex-min nonnegative prices compatible with the chosen
  // payoffs; a coordinate that cannot be nonnegative falls back to its
  // unconstrained minimum.
  out.prices.assign(l, Rational());
  for (std::size_t c = 0; c < l; ++c) {
    RationalVector ec(n + l);
    ec[n + c] = Rational(1);
    Polytope with_sign = pinned;
    with_sign.add(ec, Relation::kGe, Rational());
    Probe p = with_sign.minimize(ec);
    if (p.optimal()) {
      pinned = std::move(with_sign);
    } else {
      p = pinned.minimize(ec);
      if (!p.optimal()) throw SolverInternalError("walras: price coordinate unbounded");
    }
    out.prices[c] = p.value;
    pinned.add(std::move(ec), Relation::kEq, p.value);
  }

  out.transfers.assign(n, Rational());
  for (int i : coalition_members(support)) {
    Rational direct;
    const ExchangeType& t = e.types[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < t.trades.size(); ++a) {
      direct += activity_value(e, i, a) * out.mixtures[static_cast<std::size_t>(i)][a];
    }
    out.transfers[static_cast<std::size_t>(i)] =
        direct - out.payoffs[static_cast<std::size_t>(i)];
  }
  return out;
}

std::pair<Probe, Probe> price_range(const ExchangeEconomy& e, const RationalVector& x,
                                    int commodity) {
  if (commodity < 0 || commodity >= e.num_commodities) {
    throw std::invalid_argument("price_range: commodity out of range");
  }
  const PayoffFace face = ExchangeGains(e).payoff_face(x);
  return face.polytope().coordinate_range(static_cast<std::size_t>(e.num_types()) +
                                          static_cast<std::size_t>(commodity));
}

CoalitionGame exchange_characteristic(const ExchangeEconomy& e) {
  const int n = e.num_types();
  if (n > kMaxPlayers) throw SizeGuardError("exchange_characteristic: too many types");
  const ExchangeGains gains(e);
  CoalitionGame out;
  out.num_players = n;
  out.values.resize(std::size_t{1} << n);
  const Coalition all = full_coalition(n);
  for (Coalition s = 1; s <= all; ++s) {
    RationalVector x(static_cast<std::size_t>(n));
    for (int i : coalition_members(s)) x[static_cast<std::size_t>(i)] = Rational(1);
    out.values[s] = gains.value(x);
  }
  return out;
}

ExchangeEulerReport exchange_euler_analysis(const ExchangeEconomy& e, const RationalVector& x,
                                            long k_max) {
  const ExchangeGains gains(e);
  ExchangeEulerReport report;
  report.sweep = gap_sweep(gains, x, k_max);
  report.differentiability = is_differentiable(gains, x);
  report.characteristic_totally_balanced = is_self_concavifying(exchange_characteristic(e));
  return report;
}

}  // namespace tug
