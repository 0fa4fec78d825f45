#ifndef TUG_TESTS_FIXTURES_HPP
#define TUG_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "tug/charfn.hpp"
#include "tug/game.hpp"
#include "tug/rational.hpp"

namespace tug::testing {

inline Rational R(long n) { return Rational(n); }
inline Rational R(long n, long d) { return Rational(n, d); }

inline RationalVector vec(std::initializer_list<Rational> xs) { return RationalVector(xs); }

// Glove pattern on two types: v({1}) = v({2}) = 0, v({1,2}) = 1. Its gains
// value is min(x1, x2).
inline CoalitionGame glove_game() {
  CoalitionGame g;
  g.num_players = 2;
  g.values = {R(0), R(0), R(0), R(1)};
  return g;
}

inline CommunityGame glove_community() { return coalition_to_community(glove_game()); }

// Three-player majority: v(S) = 1 iff |S| >= 2.
inline CoalitionGame majority_game() {
  CoalitionGame g;
  g.num_players = 3;
  g.values = {R(0), R(0), R(0), R(1), R(0), R(1), R(1), R(1)};
  return g;
}

// Unanimity game on {1,2} inside a 3-player set.
inline CoalitionGame unanimity12_game() {
  CoalitionGame g;
  g.num_players = 3;
  g.values = {R(0), R(0), R(0), R(1), R(0), R(0), R(0), R(1)};
  return g;
}

// Additive game from per-player worths.
inline CoalitionGame additive_game(const RationalVector& c) {
  CoalitionGame g;
  g.num_players = static_cast<int>(c.size());
  g.values.resize(std::size_t{1} << g.num_players);
  const Coalition all = full_coalition(g.num_players);
  for (Coalition s = 1; s <= all; ++s) {
    Rational v;
    for (int i : coalition_members(s)) v += c[static_cast<std::size_t>(i)];
    g.values[s] = v;
  }
  return g;
}

// "Battle": both players want the same corner profile worth (1, 1); alone
// they secure nothing. As a community game: singletons at 0, the pair with a
// single (1, 1) profile.
inline CommunityGame battle_community() {
  CommunityGame g;
  g.num_types = 2;
  g.communities.push_back({coalition_of({0}), {{vec({R(0)})}}});
  g.communities.push_back({coalition_of({1}), {{vec({R(0)})}}});
  g.communities.push_back({coalition_of({0, 1}), {{vec({R(1), R(1)})}}});
  return g;
}

// Matching pennies: u1 diagonal, u2 = 1 - u1; constant-sum with value 1/2
// for each side.
inline NormalFormGame matching_pennies() {
  NormalFormGame g;
  g.num_players = 2;
  g.action_counts = {2, 2};
  g.utilities = {vec({R(1), R(0), R(0), R(1)}), vec({R(0), R(1), R(1), R(0)})};
  return g;
}

// Battle in normal form: u1 = u2 = 1 at profile (0,0), zero elsewhere.
inline NormalFormGame battle_normal_form() {
  NormalFormGame g;
  g.num_players = 2;
  g.action_counts = {2, 2};
  g.utilities = {vec({R(1), R(0), R(0), R(0)}), vec({R(1), R(0), R(0), R(0)})};
  return g;
}

// Three overlapping pair communities with distinct worths; the payoff face
// at 1 is the singleton (2, 1, 0) while F(1,1,1) = 3 has a fractional
// optimal cover. Used for the Shapley/gradient comparison.
inline CommunityGame pairwise_overlap_community() {
  CommunityGame g;
  g.num_types = 3;
  g.communities.push_back({coalition_of({0}), {{vec({R(0)})}}});
  g.communities.push_back({coalition_of({1}), {{vec({R(0)})}}});
  g.communities.push_back({coalition_of({2}), {{vec({R(0)})}}});
  g.communities.push_back({coalition_of({0, 1}), {{vec({R(3, 2), R(3, 2)})}}});
  g.communities.push_back({coalition_of({0, 2}), {{vec({R(1), R(1)})}}});
  g.communities.push_back({coalition_of({1, 2}), {{vec({R(1, 2), R(1, 2)})}}});
  return g;
}

// Deterministic small-rational generator for property tests.
class RationalSource {
 public:
  explicit RationalSource(unsigned seed) : rng_(seed) {}

  Rational nonneg(long max_num = 8, long max_den = 3) {
    std::uniform_int_distribution<long> num(0, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }

  Rational signed_value(long max_num = 6, long max_den = 3) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }

  Rational positive(long max_num = 5, long max_den = 2) {
    std::uniform_int_distribution<long> num(1, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }

  long integer(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng_);
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

// Random community game: all singletons, each larger coalition present with
// probability 1/2 carrying 1-2 profiles of small nonnegative utilities.
inline CommunityGame random_community(RationalSource& src, int n) {
  CommunityGame g;
  g.num_types = n;
  const Coalition all = full_coalition(n);
  for (Coalition s = 1; s <= all; ++s) {
    const int size = coalition_size(s);
    if (size > 1 && src.integer(0, 1) == 0) continue;
    Community c;
    c.members = s;
    const long profiles = size == 1 ? 1 : src.integer(1, 2);
    for (long t = 0; t < profiles; ++t) {
      CommunityProfile p;
      for (int j = 0; j < size; ++j) p.member_utilities.push_back(src.nonneg());
      c.profiles.push_back(std::move(p));
    }
    g.communities.push_back(std::move(c));
  }
  return g;
}

inline NormalFormGame random_two_person_game(RationalSource& src) {
  NormalFormGame g;
  g.num_players = 2;
  g.action_counts = {static_cast<int>(src.integer(2, 3)), static_cast<int>(src.integer(2, 3))};
  const std::size_t profiles = g.num_profiles();
  for (int i = 0; i < 2; ++i) {
    RationalVector u;
    for (std::size_t a = 0; a < profiles; ++a) u.push_back(src.nonneg(9, 4));
    g.utilities.push_back(std::move(u));
  }
  return g;
}

inline RationalVector random_population(RationalSource& src, int n) {
  RationalVector x;
  for (int i = 0; i < n; ++i) x.push_back(src.positive());
  return x;
}

}  // namespace tug::testing

#endif  // TUG_TESTS_FIXTURES_HPP
