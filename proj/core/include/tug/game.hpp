#ifndef TUG_GAME_HPP
#define TUG_GAME_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tug/rational.hpp"

namespace tug {

/// Coalitions are bitmasks: bit i set means type i (0-based) is a member.
/// The word width caps the player count; everything here is desk scale
/// (n <= 10 enforced where coalitions are enumerated).
using Coalition = std::uint32_t;

inline constexpr int kMaxPlayers = 10;

int coalition_size(Coalition s);
Coalition full_coalition(int n);
std::vector<int> coalition_members(Coalition s);
Coalition coalition_of(const std::vector<int>& members);
std::string coalition_label(Coalition s);  // e.g. "{1,3}" with 1-based names

/// An n-player game in normal form: per player, a utility table over full
/// action profiles (profile_index order).
struct NormalFormGame {
  int num_players = 0;
  std::vector<int> action_counts;
  std::vector<RationalVector> utilities;

  std::size_t num_profiles() const;
  const Rational& utility(int player, std::size_t profile) const {
    return utilities[player][profile];
  }
};

/// Set function v(S) on bitmask-indexed coalitions, v(empty) = 0, v >= 0.
struct CoalitionGame {
  int num_players = 0;
  RationalVector values;  // size 1 << num_players

  const Rational& value(Coalition s) const { return values[s]; }
};

struct CommunityProfile {
  RationalVector member_utilities;  // aligned with the community's member list
};

struct Community {
  Coalition members = 0;
  std::vector<CommunityProfile> profiles;
};

/// Per-coalition action sets with per-member utilities; the primitive the
/// gains program draws from. Normal-form and coalition games are converted
/// into this form.
struct CommunityGame {
  int num_types = 0;
  std::vector<Community> communities;

  Rational profile_total(std::size_t community, std::size_t profile) const;
};

std::vector<std::string> validate(const NormalFormGame& g);
std::vector<std::string> validate(const CoalitionGame& g);
std::vector<std::string> validate(const CommunityGame& g);

/// Population x >= 0, x != 0. Helpers shared by the homogeneous machinery.
std::vector<std::string> validate_population(const RationalVector& x, int num_types);
Coalition population_support(const RationalVector& x);

/// Mixed-radix profile encoding, first action coordinate most significant.
std::size_t profile_index(const std::vector<int>& action_counts, const std::vector<int>& profile);
std::vector<int> profile_unrank(const std::vector<int>& action_counts, std::size_t index);

/// Each coalition S becomes a community with a single profile splitting v(S)
/// equally among members (the downstream program only uses coalition sums;
/// the split fixes per-member accounting for money transfers).
CommunityGame coalition_to_community(const CoalitionGame& g);

/// Values restricted to subsets of S, players reindexed in ascending order.
CoalitionGame subgame(const CoalitionGame& g, Coalition s);

CoalitionGame add_games(const CoalitionGame& a, const CoalitionGame& b);

}  // namespace tug

#endif  // TUG_GAME_HPP
