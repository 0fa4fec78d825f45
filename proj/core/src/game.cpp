#include "tug/game.hpp"

#include <bit>
#include <stdexcept>

namespace tug {

int coalition_size(Coalition s) { return std::popcount(s); }

Coalition full_coalition(int n) {
  if (n <= 0 || n > kMaxPlayers) throw std::invalid_argument("full_coalition: bad player count");
  return (Coalition{1} << n) - 1;
}

std::vector<int> coalition_members(Coalition s) {
  std::vector<int> m;
  for (int i = 0; s != 0; ++i, s >>= 1) {
    if (s & 1) m.push_back(i);
  }
  return m;
}

Coalition coalition_of(const std::vector<int>& members) {
  Coalition s = 0;
  for (int i : members) {
    if (i < 0 || i >= kMaxPlayers) throw std::invalid_argument("coalition_of: member out of range");
    s |= Coalition{1} << i;
  }
  return s;
}

std::string coalition_label(Coalition s) {
  std::string out = "{";
  bool first = true;
  for (int i : coalition_members(s)) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

std::size_t NormalFormGame::num_profiles() const {
  std::size_t p = 1;
  for (int m : action_counts) p *= static_cast<std::size_t>(m);
  return p;
}

Rational CommunityGame::profile_total(std::size_t community, std::size_t profile) const {
  return sum(communities[community].profiles[profile].member_utilities);
}

std::vector<std::string> validate(const NormalFormGame& g) {
  std::vector<std::string> bad;
  if (g.num_players < 1) bad.push_back("num_players: must be >= 1");
  if (g.num_players > kMaxPlayers) bad.push_back("num_players: exceeds supported maximum 10");
  if (static_cast<int>(g.action_counts.size()) != g.num_players) {
    bad.push_back("action_counts: length differs from num_players");
    return bad;
  }
  for (int i = 0; i < g.num_players; ++i) {
    if (g.action_counts[i] < 1) {
      bad.push_back("action_counts[" + std::to_string(i + 1) + "]: must be >= 1");
    }
  }
  if (!bad.empty()) return bad;
  const std::size_t profiles = g.num_profiles();
  if (g.utilities.size() != static_cast<std::size_t>(g.num_players)) {
    bad.push_back("utilities: need one table per player");
    return bad;
  }
  for (int i = 0; i < g.num_players; ++i) {
    if (g.utilities[i].size() != profiles) {
      bad.push_back("utilities[" + std::to_string(i + 1) + "]: table length " +
                    std::to_string(g.utilities[i].size()) + ", expected " +
                    std::to_string(profiles));
      continue;
    }
    for (std::size_t a = 0; a < profiles; ++a) {
      if (g.utilities[i][a].sign() < 0) {
        bad.push_back("utilities[" + std::to_string(i + 1) + "][" + std::to_string(a) +
                      "]: negative utility");
      }
    }
  }
  return bad;
}

std::vector<std::string> validate(const CoalitionGame& g) {
  std::vector<std::string> bad;
  if (g.num_players < 1) bad.push_back("num_players: must be >= 1");
  if (g.num_players > kMaxPlayers) bad.push_back("num_players: exceeds supported maximum 10");
  if (!bad.empty()) return bad;
  const std::size_t expect = std::size_t{1} << g.num_players;
  if (g.values.size() != expect) {
    bad.push_back("values: length " + std::to_string(g.values.size()) + ", expected 2^n = " +
                  std::to_string(expect));
    return bad;
  }
  if (!g.values[0].is_zero()) bad.push_back("values[0]: empty coalition must have value 0");
  for (std::size_t s = 0; s < expect; ++s) {
    if (g.values[s].sign() < 0) {
      bad.push_back("values[" + std::to_string(s) + "]: negative value");
    }
  }
  return bad;
}

std::vector<std::string> validate(const CommunityGame& g) {
  std::vector<std::string> bad;
  if (g.num_types < 1) bad.push_back("num_types: must be >= 1");
  if (g.num_types > kMaxPlayers) bad.push_back("num_types: exceeds supported maximum 10");
  if (!bad.empty()) return bad;
  const Coalition all = full_coalition(g.num_types);
  std::vector<bool> singleton_seen(g.num_types, false);
  std::vector<bool> mask_seen(std::size_t{1} << g.num_types, false);
  for (std::size_t k = 0; k < g.communities.size(); ++k) {
    const Community& c = g.communities[k];
    const std::string where = "communities[" + std::to_string(k) + "]";
    if (c.members == 0) {
      bad.push_back(where + ".members: empty");
      continue;
    }
    if ((c.members & ~all) != 0) {
      bad.push_back(where + ".members: player out of range");
      continue;
    }
    if (mask_seen[c.members]) bad.push_back(where + ".members: duplicate community");
    mask_seen[c.members] = true;
    if (coalition_size(c.members) == 1) singleton_seen[coalition_members(c.members)[0]] = true;
    if (c.profiles.empty()) bad.push_back(where + ".profiles: empty");
    const std::size_t width = static_cast<std::size_t>(coalition_size(c.members));
    for (std::size_t t = 0; t < c.profiles.size(); ++t) {
      const std::string pwhere = where + ".profiles[" + std::to_string(t) + "]";
      if (c.profiles[t].member_utilities.size() != width) {
        bad.push_back(pwhere + ": utility count differs from member count");
        continue;
      }
      for (std::size_t j = 0; j < width; ++j) {
        if (c.profiles[t].member_utilities[j].sign() < 0) {
          bad.push_back(pwhere + "[" + std::to_string(j) + "]: negative utility");
        }
      }
    }
  }
  for (int i = 0; i < g.num_types; ++i) {
    if (!singleton_seen[i]) {
      bad.push_back("communities: missing singleton community for type " + std::to_string(i + 1));
    }
  }
  return bad;
}

std::vector<std::string> validate_population(const RationalVector& x, int num_types) {
  std::vector<std::string> bad;
  if (static_cast<int>(x.size()) != num_types) {
    bad.push_back("population: length differs from type count");
    return bad;
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].sign() < 0) bad.push_back("population[" + std::to_string(i + 1) + "]: negative");
    if (x[i].sign() > 0) any_positive = true;
  }
  if (!any_positive) bad.push_back("population: must not be all zero");
  return bad;
}

Coalition population_support(const RationalVector& x) {
  Coalition s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].sign() > 0) s |= Coalition{1} << i;
  }
  return s;
}

std::size_t profile_index(const std::vector<int>& action_counts, const std::vector<int>& profile) {
  if (profile.size() != action_counts.size()) {
    throw std::invalid_argument("profile_index: arity mismatch");
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= action_counts[i]) {
      throw std::out_of_range("profile_index: component out of range");
    }
    idx = idx * static_cast<std::size_t>(action_counts[i]) + static_cast<std::size_t>(profile[i]);
  }
  return idx;
}

std::vector<int> profile_unrank(const std::vector<int>& action_counts, std::size_t index) {
  std::vector<int> profile(action_counts.size());
  for (std::size_t i = action_counts.size(); i-- > 0;) {
    const std::size_t m = static_cast<std::size_t>(action_counts[i]);
    profile[i] = static_cast<int>(index % m);
    index /= m;
  }
  if (index != 0) throw std::out_of_range("profile_unrank: index out of range");
  return profile;
}

CommunityGame coalition_to_community(const CoalitionGame& g) {
  CommunityGame out;
  out.num_types = g.num_players;
  const Coalition all = full_coalition(g.num_players);
  for (Coalition s = 1; s <= all; ++s) {
    Community c;
    c.members = s;
    const int size = coalition_size(s);
    const Rational share = g.value(s) / Rational(size);
    c.profiles.push_back({RationalVector(static_cast<std::size_t>(size), share)});
    out.communities.push_back(std::move(c));
  }
  return out;
}

CoalitionGame subgame(const CoalitionGame& g, Coalition s) {
  if (s == 0) throw std::invalid_argument("subgame: empty coalition");
  const std::vector<int> members = coalition_members(s);
  CoalitionGame out;
  out.num_players = static_cast<int>(members.size());
  out.values.resize(std::size_t{1} << out.num_players);
  const Coalition sub_all = full_coalition(out.num_players);
  for (Coalition t = 0; t <= sub_all; ++t) {
    Coalition orig = 0;
    for (int j = 0; j < out.num_players; ++j) {
      if (t & (Coalition{1} << j)) orig |= Coalition{1} << members[j];
    }
    out.values[t] = g.value(orig);
  }
  return out;
}

CoalitionGame add_games(const CoalitionGame& a, const CoalitionGame& b) {
  if (a.num_players != b.num_players) throw std::invalid_argument("add_games: size mismatch");
  CoalitionGame out;
  out.num_players = a.num_players;
  out.values = add(a.values, b.values);
  return out;
}

}  // namespace tug
