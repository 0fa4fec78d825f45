#include "tug/charfn.hpp"

#include <stdexcept>

#include "tug/lp.hpp"
#include "tug/polytope.hpp"

namespace tug {

namespace {

// Joint-action table of coalition s: members' action counts in ascending
// member order, plus the mixed-radix size.
struct JointActions {
  std::vector<int> members;
  std::vector<int> counts;
  std::size_t size = 1;
};

JointActions joint_actions(const NormalFormGame& g, Coalition s) {
  JointActions ja;
  ja.members = coalition_members(s);
  for (int i : ja.members) {
    ja.counts.push_back(g.action_counts[i]);
    ja.size *= static_cast<std::size_t>(g.action_counts[i]);
  }
  return ja;
}

std::vector<int> combine_profiles(const NormalFormGame& g, const JointActions& in_s,
                                  std::size_t row, const JointActions& out_s, std::size_t col) {
  std::vector<int> full(static_cast<std::size_t>(g.num_players), 0);
  if (!in_s.members.empty()) {
    const std::vector<int> a = profile_unrank(in_s.counts, row);
    for (std::size_t j = 0; j < in_s.members.size(); ++j) full[in_s.members[j]] = a[j];
  }
  if (!out_s.members.empty()) {
    const std::vector<int> b = profile_unrank(out_s.counts, col);
    for (std::size_t j = 0; j < out_s.members.size(); ++j) full[out_s.members[j]] = b[j];
  }
  return full;
}

Rational coalition_total(const NormalFormGame& g, Coalition s, std::size_t profile) {
  Rational total;
  for (int i : coalition_members(s)) total += g.utility(i, profile);
  return total;
}

// Payoff matrix of the zero-sum game S vs I\S: rows joint actions of S,
// columns joint actions of I\S, entries sum of S's utilities.
std::vector<RationalVector> payoff_matrix(const NormalFormGame& g, Coalition s,
                                          const JointActions& rows, const JointActions& cols) {
  std::vector<RationalVector> p(rows.size, RationalVector(cols.size));
  for (std::size_t r = 0; r < rows.size; ++r) {
    for (std::size_t c = 0; c < cols.size; ++c) {
      const std::vector<int> full = combine_profiles(g, rows, r, cols, c);
      p[r][c] = coalition_total(g, s, profile_index(g.action_counts, full));
    }
  }
  return p;
}

// max v s.t. P^T z >= v per column, sum z = 1, z >= 0.
LinearProgram row_player_lp(const std::vector<RationalVector>& p) {
  const std::size_t rows = p.size();
  const std::size_t cols = p[0].size();
  RationalVector obj(rows + 1);
  obj[rows] = Rational(1);
  LinearProgram lp(Sense::kMaximize, obj);
  lp.set_bound(rows, VarBound::kFree);
  for (std::size_t c = 0; c < cols; ++c) {
    RationalVector coeffs(rows + 1);
    for (std::size_t r = 0; r < rows; ++r) coeffs[r] = p[r][c];
    coeffs[rows] = Rational(-1);
    lp.add_constraint(std::move(coeffs), Relation::kGe, Rational());
  }
  RationalVector ones(rows + 1, Rational(1));
  ones[rows] = Rational();
  lp.add_constraint(std::move(ones), Relation::kEq, Rational(1));
  return lp;
}

// min v s.t. P w <= v per row, sum w = 1, w >= 0.
LinearProgram column_player_lp(const std::vector<RationalVector>& p) {
  const std::size_t rows = p.size();
  const std::size_t cols = p[0].size();
  RationalVector obj(cols + 1);
  obj[cols] = Rational(1);
  LinearProgram lp(Sense::kMinimize, obj);
  lp.set_bound(cols, VarBound::kFree);
  for (std::size_t r = 0; r < rows; ++r) {
    RationalVector coeffs(cols + 1);
    for (std::size_t c = 0; c < cols; ++c) coeffs[c] = p[r][c];
    coeffs[cols] = Rational(-1);
    lp.add_constraint(std::move(coeffs), Relation::kLe, Rational());
  }
  RationalVector ones(cols + 1, Rational(1));
  ones[cols] = Rational();
  lp.add_constraint(std::move(ones), Relation::kEq, Rational(1));
  return lp;
}

// Lexicographically smallest optimal mixed strategy; the optimal face of the
// strategy simplex at value v.
RationalVector lex_min_strategy(const std::vector<RationalVector>& p, const Rational& value,
                                bool row_player) {
  const std::size_t rows = p.size();
  const std::size_t cols = p[0].size();
  const std::size_t n = row_player ? rows : cols;
  Polytope face(n);
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n);
    e[j] = Rational(1);
    face.add(std::move(e), Relation::kGe, Rational());
  }
  face.add(RationalVector(n, Rational(1)), Relation::kEq, Rational(1));
  if (row_player) {
    for (std::size_t c = 0; c < cols; ++c) {
      RationalVector coeffs(n);
      for (std::size_t r = 0; r < rows; ++r) coeffs[r] = p[r][c];
      face.add(std::move(coeffs), Relation::kGe, value);
    }
  } else {
    for (std::size_t r = 0; r < rows; ++r) {
      RationalVector coeffs(n);
      for (std::size_t c = 0; c < cols; ++c) coeffs[c] = p[r][c];
      face.add(std::move(coeffs), Relation::kLe, value);
    }
  }
  auto point = face.lex_min();
  if (!point) throw SolverInternalError("minimax strategy face empty");
  return *point;
}

struct GrandOptimum {
  Rational value;
  std::vector<std::size_t> argmax;  // ascending profile indices attaining the max
};

GrandOptimum grand_optimum(const NormalFormGame& g, Coalition s) {
  GrandOptimum out;
  const std::size_t profiles = g.num_profiles();
  for (std::size_t a = 0; a < profiles; ++a) {
    const Rational t = coalition_total(g, s, a);
    if (a == 0 || t > out.value) {
      out.value = t;
      out.argmax.assign(1, a);
    } else if (t == out.value) {
      out.argmax.push_back(a);
    }
  }
  return out;
}

}  // namespace

MinimaxResult minimax_value(const NormalFormGame& g, Coalition s) {
  if (s == 0) throw std::invalid_argument("minimax_value: empty coalition");
  const Coalition all = full_coalition(g.num_players);
  if ((s & ~all) != 0) throw std::invalid_argument("minimax_value: player out of range");

  MinimaxResult res;
  if (s == all) {
    const GrandOptimum opt = grand_optimum(g, s);
    res.value = opt.value;
    res.coalition_mix.assign(g.num_profiles(), Rational());
    res.coalition_mix[opt.argmax.front()] = Rational(1);
    return res;
  }

  const JointActions rows = joint_actions(g, s);
  const JointActions cols = joint_actions(g, all & ~s);
  const std::vector<RationalVector> p = payoff_matrix(g, s, rows, cols);

  const LpSolution row_sol = solve(row_player_lp(p));
  const LpSolution col_sol = solve(column_player_lp(p));
  if (row_sol.status != LpStatus::kOptimal || col_sol.status != LpStatus::kOptimal) {
    throw SolverInternalError("matrix game LP not optimal");
  }
  if (row_sol.objective_value != col_sol.objective_value) {
    throw SolverInternalError("minimax duality gap");
  }
  res.value = row_sol.objective_value;
  res.coalition_mix = lex_min_strategy(p, res.value, /*row_player=*/true);
  res.opponent_mix = lex_min_strategy(p, res.value, /*row_player=*/false);
  return res;
}

namespace {

Rational exclusive_access_value(const NormalFormGame& g, Coalition s,
                                const OutsiderPolicy& policy) {
  const Coalition all = full_coalition(g.num_players);
  switch (policy.rule) {
    case OutsiderRule::kOptimistic:
      return grand_optimum(g, s).value;
    case OutsiderRule::kMinimax:
      return minimax_value(g, s).value;
    case OutsiderRule::kBaseline: {
      if (static_cast<int>(policy.baseline.size()) != g.num_players) {
        throw std::invalid_argument("baseline profile: arity mismatch");
      }
      const JointActions in_s = joint_actions(g, s);
      const JointActions out_s = joint_actions(g, all & ~s);
      std::vector<int> base_out;
      for (int i : out_s.members) base_out.push_back(policy.baseline[i]);
      const std::size_t col =
          out_s.members.empty() ? 0 : profile_index(out_s.counts, base_out);
      Rational best;
      for (std::size_t r = 0; r < in_s.size; ++r) {
        const std::vector<int> full = combine_profiles(g, in_s, r, out_s, col);
        const Rational t = coalition_total(g, s, profile_index(g.action_counts, full));
        if (r == 0 || t > best) best = t;
      }
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

CoalitionGame characteristic_function(const NormalFormGame& g, CharFnMode mode,
                                      const OutsiderPolicy& policy) {
  const Coalition all = full_coalition(g.num_players);
  CoalitionGame out;
  out.num_players = g.num_players;
  out.values.resize(std::size_t{1} << g.num_players);
  for (Coalition s = 1; s <= all; ++s) {
    const bool exclusive = mode == CharFnMode::kPropertyRights && coalition_size(s) >= 3;
    out.values[s] =
        exclusive ? exclusive_access_value(g, s, policy) : minimax_value(g, s).value;
  }
  return out;
}

namespace {

// Single minimax profile for coalition s: member utilities at the canonical
// equilibrium pair. For s = I the optimizer face is the simplex over maximal
// profiles; if a member's utility varies across it, the value is split
// equally instead (the optimizer leaves the split undetermined).
void minimax_profile(const NormalFormGame& g, Coalition s, Community* community,
                     std::vector<ProfileProvenance>* provenance) {
  const Coalition all = full_coalition(g.num_players);
  const std::vector<int> members = coalition_members(s);
  const std::size_t profiles = g.num_profiles();
  CommunityProfile prof;
  ProfileProvenance prov;
  prov.distribution.assign(profiles, Rational());

  if (s == all) {
    const GrandOptimum opt = grand_optimum(g, s);
    bool determined = true;
    for (int i : members) {
      const Rational& first = g.utility(i, opt.argmax.front());
      for (std::size_t a : opt.argmax) {
        if (g.utility(i, a) != first) {
          determined = false;
          break;
        }
      }
      if (!determined) break;
    }
    if (determined) {
      prov.distribution[opt.argmax.front()] = Rational(1);
      for (int i : members) prof.member_utilities.push_back(g.utility(i, opt.argmax.front()));
    } else {
      const Rational w = Rational(1) / Rational(static_cast<long>(opt.argmax.size()));
      for (std::size_t a : opt.argmax) prov.distribution[a] = w;
      prov.equal_split = true;
      const Rational share = opt.value / Rational(static_cast<long>(members.size()));
      prof.member_utilities.assign(members.size(), share);
    }
  } else {
    const JointActions in_s = joint_actions(g, s);
    const JointActions out_s = joint_actions(g, all & ~s);
    const std::vector<RationalVector> p = payoff_matrix(g, s, in_s, out_s);
    const MinimaxResult mm = minimax_value(g, s);
    prof.member_utilities.assign(members.size(), Rational());
    for (std::size_t r = 0; r < in_s.size; ++r) {
      if (mm.coalition_mix[r].is_zero()) continue;
      for (std::size_t c = 0; c < out_s.size; ++c) {
        if (mm.opponent_mix[c].is_zero()) continue;
        const Rational mass = mm.coalition_mix[r] * mm.opponent_mix[c];
        const std::vector<int> full = combine_profiles(g, in_s, r, out_s, c);
        const std::size_t idx = profile_index(g.action_counts, full);
        prov.distribution[idx] += mass;
        for (std::size_t j = 0; j < members.size(); ++j) {
          prof.member_utilities[j] += mass * g.utility(members[j], idx);
        }
      }
    }
  }
  community->profiles.push_back(std::move(prof));
  provenance->push_back(std::move(prov));
}

}  // namespace

DerivedCommunity derive_community(const NormalFormGame& g, CharFnMode mode,
                                  const OutsiderPolicy& policy) {
  const Coalition all = full_coalition(g.num_players);
  DerivedCommunity out;
  out.game.num_types = g.num_players;
  for (Coalition s = 1; s <= all; ++s) {
    Community community;
    community.members = s;
    std::vector<ProfileProvenance> prov;
    const bool exclusive = mode == CharFnMode::kPropertyRights && coalition_size(s) >= 3;
    if (exclusive) {
      // Full profile table over A_S, outsiders resolved per profile.
      const JointActions in_s = joint_actions(g, s);
      const JointActions out_s = joint_actions(g, all & ~s);
      const std::vector<int> members = coalition_members(s);
      for (std::size_t r = 0; r < in_s.size; ++r) {
        std::size_t chosen_col = 0;
        if (!out_s.members.empty()) {
          switch (policy.rule) {
            case OutsiderRule::kOptimistic:
            case OutsiderRule::kMinimax: {
              Rational best;
              for (std::size_t c = 0; c < out_s.size; ++c) {
                const std::vector<int> full = combine_profiles(g, in_s, r, out_s, c);
                const Rational t =
                    coalition_total(g, s, profile_index(g.action_counts, full));
                const bool better = policy.rule == OutsiderRule::kOptimistic
                                        ? (c == 0 || t > best)
                                        : (c == 0 || t < best);
                if (better) {
                  best = t;
                  chosen_col = c;
                }
              }
              break;
            }
            case OutsiderRule::kBaseline: {
              if (static_cast<int>(policy.baseline.size()) != g.num_players) {
                throw std::invalid_argument("baseline profile: arity mismatch");
              }
              std::vector<int> base_out;
              for (int i : out_s.members) base_out.push_back(policy.baseline[i]);
              chosen_col = profile_index(out_s.counts, base_out);
              break;
            }
          }
        }
        const std::vector<int> full = combine_profiles(g, in_s, r, out_s, chosen_col);
        const std::size_t idx = profile_index(g.action_counts, full);
        CommunityProfile prof;
        for (int i : members) prof.member_utilities.push_back(g.utility(i, idx));
        community.profiles.push_back(std::move(prof));
        ProfileProvenance pp;
        pp.distribution.assign(g.num_profiles(), Rational());
        pp.distribution[idx] = Rational(1);
        prov.push_back(std::move(pp));
      }
    } else {
      minimax_profile(g, s, &community, &prov);
    }
    out.game.communities.push_back(std::move(community));
    out.provenance.push_back(std::move(prov));
  }
  return out;
}

CommunityGame community_from_normal_form(const NormalFormGame& g, CharFnMode mode,
                                         const OutsiderPolicy& policy) {
  return derive_community(g, mode, policy).game;
}

CommunityGame reevaluate_community(const DerivedCommunity& derived,
                                   const NormalFormGame& utilities) {
  CommunityGame out = derived.game;
  for (std::size_t k = 0; k < out.communities.size(); ++k) {
    Community& community = out.communities[k];
    const std::vector<int> members = coalition_members(community.members);
    for (std::size_t t = 0; t < community.profiles.size(); ++t) {
      const ProfileProvenance& prov = derived.provenance[k][t];
      RationalVector w(members.size());
      for (std::size_t j = 0; j < members.size(); ++j) {
        w[j] = dot(prov.distribution, utilities.utilities[members[j]]);
      }
      if (prov.equal_split) {
        const Rational share = sum(w) / Rational(static_cast<long>(members.size()));
        w.assign(members.size(), share);
      }
      community.profiles[t].member_utilities = std::move(w);
    }
  }
  return out;
}

Rational superadditive_cover_value(const CoalitionGame& g, Coalition s) {
  if (s == 0) throw std::invalid_argument("cover: empty coalition");
  std::vector<Coalition> columns;
  for (Coalition t = 1; t <= s; ++t) {
    if ((t & ~s) == 0) columns.push_back(t);
  }
  RationalVector obj;
  obj.reserve(columns.size());
  for (Coalition t : columns) obj.push_back(g.value(t));
  LinearProgram lp(Sense::kMaximize, obj);
  for (int i : coalition_members(s)) {
    RationalVector row(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] & (Coalition{1} << i)) row[j] = Rational(1);
    }
    lp.add_constraint(std::move(row), Relation::kEq, Rational(1));
  }
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverInternalError("cover program must be optimal");
  }
  return sol.objective_value;
}

SuperadditivityReport is_superadditive(const CoalitionGame& g) {
  const Coalition all = full_coalition(g.num_players);
  for (Coalition s = 1; s <= all; ++s) {
    const Coalition rest = all & ~s;
    for (Coalition t = rest; t != 0; t = (t - 1) & rest) {
      if (g.value(s | t) < g.value(s) + g.value(t)) {
        return {false, s, t};
      }
    }
  }
  return {};
}

bool is_self_concavifying(const CoalitionGame& g) {
  const Coalition all = full_coalition(g.num_players);
  for (Coalition s = 1; s <= all; ++s) {
    if (superadditive_cover_value(g, s) != g.value(s)) return false;
  }
  return true;
}

std::optional<Rational> constant_sum_total(const NormalFormGame& g) {
  const std::size_t profiles = g.num_profiles();
  Rational c = coalition_total(g, full_coalition(g.num_players), 0);
  for (std::size_t a = 1; a < profiles; ++a) {
    if (coalition_total(g, full_coalition(g.num_players), a) != c) return std::nullopt;
  }
  return c;
}

}  // namespace tug
