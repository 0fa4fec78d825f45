#include "tug/incentives.hpp"

#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "tug/lp.hpp"
#include "tug/solutions.hpp"

namespace tug {

namespace {

void check_same_structure(const CommunityGame& a, const CommunityGame& b) {
  bool ok = a.num_types == b.num_types && a.communities.size() == b.communities.size();
  for (std::size_t k = 0; ok && k < a.communities.size(); ++k) {
    ok = a.communities[k].members == b.communities[k].members &&
         a.communities[k].profiles.size() == b.communities[k].profiles.size();
  }
  if (!ok) throw std::invalid_argument("mechanism: true/reported games differ in structure");
}

CoalitionGame indicator_game(const CommunityGains& gains) {
  const int n = gains.num_types();
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

RationalVector rule_payoffs(const CommunityGains& gains, const PaymentRule& rule,
                            const RationalVector& x) {
  const int n = gains.num_types();
  RationalVector r(static_cast<std::size_t>(n));
  switch (rule.kind) {
    case PaymentRule::Kind::kMarginalContribution: {
      RationalVector kx(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) kx[i] = Rational(rule.k) * x[i];
      const Rational f_kx = gains.value(kx);
      for (int i : coalition_members(population_support(x))) {
        RationalVector less = kx;
        less[static_cast<std::size_t>(i)] -= Rational(1);
        if (less[static_cast<std::size_t>(i)].sign() < 0) {
          throw std::domain_error("marginal rule: kx - e_i leaves the domain");
        }
        r[static_cast<std::size_t>(i)] = f_kx - gains.value(less);
      }
      return r;
    }
    case PaymentRule::Kind::kShapleyOfCover:
      return shapley_value(indicator_game(gains)).values;
    case PaymentRule::Kind::kCoreSelection: {
      const CorePolytope c = core(indicator_game(gains));
      if (c.empty()) throw RuleNotApplicableError("core selection: empty core");
      auto point = c.lex_min_point();
      if (!point) throw SolverInternalError("nonempty core without lex-min point");
      return *point;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

MechanismOutcome mechanism_outcome(const CommunityGame& true_game,
                                   const CommunityGame& reported_game, const PaymentRule& rule,
                                   const RationalVector& x) {
  check_same_structure(true_game, reported_game);
  const CommunityGains reported(reported_game);

  MechanismOutcome out;
  const AssignmentFace face = assignment_face(reported_game, x);
  out.columns = face.columns();
  out.assignment = face.lex_min();
  out.reported_value = face.value();
  out.payoffs = rule_payoffs(reported, rule, x);

  const RationalVector reported_direct =
      direct_utilities(reported_game, x, out.columns, out.assignment);
  const RationalVector true_direct = direct_utilities(true_game, x, out.columns, out.assignment);
  const std::size_t n = x.size();
  out.transfers.assign(n, Rational());
  out.realized.assign(n, Rational());
  Rational paid;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    out.transfers[i] = reported_direct[i] - out.payoffs[i];
    out.realized[i] = true_direct[i] - out.transfers[i];
    paid += out.payoffs[i] * x[i];
  }
  out.deficit = paid - out.reported_value;
  return out;
}

std::vector<RationalVector> misreport_candidates(const RationalVector& row,
                                                 const std::vector<RationalVector>& extra) {
  std::vector<RationalVector> out;
  out.push_back(scale(row, Rational(2)));
  out.push_back(scale(row, Rational(1, 2)));
  out.push_back(RationalVector(row.size(), Rational()));
  RationalVector reversed(row.rbegin(), row.rend());
  out.push_back(std::move(reversed));
  const Rational deltas[] = {Rational(1), Rational(1, 2)};
  for (std::size_t a = 0; a < row.size(); ++a) {
    for (const Rational& d : deltas) {
      RationalVector up = row;
      up[a] += d;
      out.push_back(std::move(up));
      RationalVector down = row;
      down[a] -= d;
      if (down[a].sign() < 0) down[a] = Rational();  // reports must stay nonnegative
      out.push_back(std::move(down));
    }
  }
  for (const RationalVector& e : extra) out.push_back(e);
  return out;
}

RationalVector player_row(const CommunityGame& g, int player) {
  RationalVector row;
  const Coalition bit = Coalition{1} << player;
  for (const Community& c : g.communities) {
    if (!(c.members & bit)) continue;
    const std::vector<int> members = coalition_members(c.members);
    std::size_t pos = 0;
    while (members[pos] != player) ++pos;
    for (const CommunityProfile& p : c.profiles) row.push_back(p.member_utilities[pos]);
  }
  return row;
}

CommunityGame with_player_row(const CommunityGame& g, int player, const RationalVector& row) {
  CommunityGame out = g;
  const Coalition bit = Coalition{1} << player;
  std::size_t at = 0;
  for (Community& c : out.communities) {
    if (!(c.members & bit)) continue;
    const std::vector<int> members = coalition_members(c.members);
    std::size_t pos = 0;
    while (members[pos] != player) ++pos;
    for (CommunityProfile& p : c.profiles) {
      if (at >= row.size()) throw std::invalid_argument("with_player_row: row too short");
      p.member_utilities[pos] = row[at++];
    }
  }
  if (at != row.size()) throw std::invalid_argument("with_player_row: row too long");
  return out;
}

namespace {

// Shared sweep: truthful outcome plus one outcome per candidate reported
// game, measuring the player's realized-true-utility change.
MisreportSearch sweep(const CommunityGame& true_counterpart_truthful,
                      const CommunityGame& reported_truthful,
                      const std::vector<RationalVector>& candidates,
                      const std::function<std::pair<CommunityGame, CommunityGame>(
                          const RationalVector&)>& candidate_games,
                      int player, const PaymentRule& rule, const RationalVector& x) {
  MisreportSearch search;
  search.truthful =
      mechanism_outcome(true_counterpart_truthful, reported_truthful, rule, x);
  const Rational base = search.truthful.realized[static_cast<std::size_t>(player)];
  bool first = true;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    auto [true_game, reported_game] = candidate_games(candidates[c]);
    const MechanismOutcome outcome = mechanism_outcome(true_game, reported_game, rule, x);
    const Rational gain = outcome.realized[static_cast<std::size_t>(player)] - base;
    if (first || gain > search.best_gain) {
      search.best_gain = gain;
      search.best_candidate = static_cast<int>(c);
      search.best_row = candidates[c];
      search.best = outcome;
      first = false;
    }
  }
  if (first) {  // no candidates: truthful is the best response trivially
    search.best_gain = Rational();
    search.best = search.truthful;
  }
  return search;
}

}  // namespace

MisreportSearch best_misreport(const CommunityGame& true_game, int player,
                               const PaymentRule& rule, const RationalVector& x,
                               const std::vector<RationalVector>& extra) {
  const std::vector<RationalVector> candidates =
      misreport_candidates(player_row(true_game, player), extra);
  return sweep(true_game, true_game, candidates,
               [&](const RationalVector& row) {
                 return std::make_pair(true_game, with_player_row(true_game, player, row));
               },
               player, rule, x);
}

MisreportSearch best_misreport(const NormalFormGame& true_game, CharFnMode mode,
                               const OutsiderPolicy& policy, int player, const PaymentRule& rule,
                               const RationalVector& x,
                               const std::vector<RationalVector>& extra) {
  const std::vector<RationalVector> candidates =
      misreport_candidates(true_game.utilities[static_cast<std::size_t>(player)], extra);
  const DerivedCommunity truthful = derive_community(true_game, mode, policy);
  return sweep(truthful.game, truthful.game, candidates,
               [&](const RationalVector& row) {
                 NormalFormGame reported_nf = true_game;
                 reported_nf.utilities[static_cast<std::size_t>(player)] = row;
                 DerivedCommunity derived = derive_community(reported_nf, mode, policy);
                 CommunityGame true_counterpart = reevaluate_community(derived, true_game);
                 return std::make_pair(std::move(true_counterpart), std::move(derived.game));
               },
               player, rule, x);
}

namespace {

std::vector<IcVerdict> verdicts_from(const std::function<MisreportSearch(int)>& search, int n) {
  std::vector<IcVerdict> out;
  for (int i = 0; i < n; ++i) {
    MisreportSearch s = search(i);
    IcVerdict v;
    v.player = i;
    v.best_gain = s.best_gain;
    v.compatible_within_family = s.best_gain.sign() <= 0;
    if (!v.compatible_within_family) v.witness = s.best_row;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<IcVerdict> incentive_compatibility(const CommunityGame& true_game,
                                               const PaymentRule& rule, const RationalVector& x,
                                               const std::vector<RationalVector>& extra) {
  return verdicts_from(
      [&](int i) { return best_misreport(true_game, i, rule, x, extra); }, true_game.num_types);
}

std::vector<IcVerdict> incentive_compatibility(const NormalFormGame& true_game, CharFnMode mode,
                                               const OutsiderPolicy& policy,
                                               const PaymentRule& rule, const RationalVector& x,
                                               const std::vector<RationalVector>& extra) {
  return verdicts_from(
      [&](int i) { return best_misreport(true_game, mode, policy, i, rule, x, extra); },
      true_game.num_players);
}

Rational directional_derivative_assignment(const CommunityGame& g, const RationalVector& x,
                                           const std::vector<RationalVector>& delta_totals) {
  if (delta_totals.size() != g.communities.size()) {
    throw std::invalid_argument("directional_derivative_assignment: delta shape");
  }
  for (std::size_t k = 0; k < g.communities.size(); ++k) {
    if (delta_totals[k].size() != g.communities[k].profiles.size()) {
      throw std::invalid_argument("directional_derivative_assignment: delta shape");
    }
  }
  const AssignmentFace face = assignment_face(g, x);
  RationalVector f;
  f.reserve(face.columns().size());
  for (const AssignmentColumn& c : face.columns()) f.push_back(delta_totals[c.community][c.profile]);
  Probe p = face.maximize(f);
  if (!p.optimal()) throw SolverInternalError("assignment face probe not optimal");
  return p.value;
}

namespace {

CommunityGame weighted_game(const CommunityGame& g, const RationalVector& gamma) {
  CommunityGame out = g;
  for (Community& c : out.communities) {
    const std::vector<int> members = coalition_members(c.members);
    for (CommunityProfile& p : c.profiles) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        p.member_utilities[j] *= gamma[static_cast<std::size_t>(members[j])];
      }
    }
  }
  return out;
}

std::string gamma_key(const RationalVector& gamma) {
  std::string key;
  for (const Rational& v : gamma) {
    key += v.str();
    key += ';';
  }
  return key;
}

}  // namespace

NtuResult ntu_fixed_point(const CommunityGame& g, const RationalVector& x,
                          const RationalVector& gamma0, const NtuOptions& options) {
  if (options.tolerance.sign() <= 0) throw std::invalid_argument("ntu: tolerance must be > 0");
  if (gamma0.size() != x.size()) throw std::invalid_argument("ntu: gamma0 length");
  Rational total = sum(gamma0);
  if (total != Rational(1)) throw std::invalid_argument("ntu: gamma0 must sum to 1");
  for (const Rational& v : gamma0) {
    if (v.sign() < 0) throw std::invalid_argument("ntu: gamma0 must be nonnegative");
  }

  NtuResult result;
  result.weights = gamma0;
  std::set<std::string> seen;
  for (long it = 0; it < options.max_iterations; ++it) {
    const SaddlePoint sp = saddle_point(weighted_game(g, result.weights), x);
    result.transfers = sp.transfers;
    result.iterations = it + 1;

    Rational worst;
    for (const Rational& m : sp.transfers) {
      const Rational a = m.abs();
      if (a > worst) worst = a;
    }
    if (worst <= options.tolerance) {
      result.status = NtuStatus::kConverged;
      return result;
    }
    if (!seen.insert(gamma_key(result.weights)).second) {
      result.status = NtuStatus::kCycleDetected;
      return result;
    }

    Rational plus_total;
    RationalVector plus(sp.transfers.size());
    for (std::size_t i = 0; i < sp.transfers.size(); ++i) {
      if (sp.transfers[i].sign() > 0) plus[i] = sp.transfers[i];
      plus_total += plus[i];
    }
    const Rational denom = Rational(1) + plus_total;
    RationalVector next(result.weights.size());
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = (result.weights[i] + plus[i]) / denom;
    }
    if (options.damping) {
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = (next[i] + result.weights[i]) * Rational(1, 2);
      }
    }
    result.weights = std::move(next);
  }
  result.status = NtuStatus::kMaxIterations;
  return result;
}

}  // namespace tug
