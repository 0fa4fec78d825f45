#include "tug/solutions.hpp"

#include <stdexcept>

#include "tug/charfn.hpp"
#include "tug/lp.hpp"

namespace tug {

namespace {

// alpha_S = |S|! (n - |S| - 1)! / n! as exact rationals, by coalition size.
std::vector<Rational> shapley_coefficients(int n) {
  std::vector<Rational> factorial(static_cast<std::size_t>(n) + 1, Rational(1));
  for (int i = 1; i <= n; ++i) {
    factorial[static_cast<std::size_t>(i)] = factorial[static_cast<std::size_t>(i - 1)] * Rational(i);
  }
  std::vector<Rational> alpha(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    alpha[static_cast<std::size_t>(s)] =
        factorial[static_cast<std::size_t>(s)] * factorial[static_cast<std::size_t>(n - s - 1)] /
        factorial[static_cast<std::size_t>(n)];
  }
  return alpha;
}

}  // namespace

ShapleyResult shapley_value(const CoalitionGame& g) {
  const int n = g.num_players;
  const Coalition all = full_coalition(n);
  const std::vector<Rational> alpha = shapley_coefficients(n);
  ShapleyResult out;
  out.values.assign(static_cast<std::size_t>(n), Rational());
  for (int i = 0; i < n; ++i) {
    const Coalition bit = Coalition{1} << i;
    Rational v;
    for (Coalition s = 0; s <= all; ++s) {
      if (s & bit) continue;
      v += alpha[static_cast<std::size_t>(coalition_size(s))] * (g.value(s | bit) - g.value(s));
    }
    out.values[static_cast<std::size_t>(i)] = v;
  }
  if (sum(out.values) != g.value(all)) {
    throw SolverInternalError("Shapley efficiency identity failed");
  }
  return out;
}

ShapleyResult shapley_subgame(const CoalitionGame& g, Coalition s) {
  if (s == 0) throw std::invalid_argument("shapley_subgame: empty coalition");
  const CoalitionGame sub = subgame(g, s);
  const ShapleyResult inner = shapley_value(sub);
  ShapleyResult out;
  out.values.assign(static_cast<std::size_t>(g.num_players), Rational());
  const std::vector<int> members = coalition_members(s);
  for (std::size_t j = 0; j < members.size(); ++j) {
    out.values[static_cast<std::size_t>(members[j])] = inner.values[j];
  }
  return out;
}

ShapleyEulerReport shapley_euler_identities(const CoalitionGame& g) {
  const Coalition all = full_coalition(g.num_players);
  ShapleyEulerReport report;
  for (Coalition s = 1; s <= all; ++s) {
    const ShapleyResult sub = shapley_subgame(g, s);
    if (sum(sub.values) != g.value(s)) {
      report.all_hold = false;
      report.failures.push_back(s);
    }
  }
  report.grand_marginals = shapley_value(g).values;
  return report;
}

CorePolytope::CorePolytope(Polytope poly, int num_players)
    : poly_(std::move(poly)), num_players_(num_players), empty_(poly_.empty()) {}

std::pair<Probe, Probe> CorePolytope::payoff_range(int player) const {
  return poly_.coordinate_range(static_cast<std::size_t>(player));
}

CorePolytope core(const CoalitionGame& g) {
  const int n = g.num_players;
  const Coalition all = full_coalition(n);
  Polytope poly(static_cast<std::size_t>(n));
  for (Coalition s = 1; s < all; ++s) {
    RationalVector row(static_cast<std::size_t>(n));
    for (int i : coalition_members(s)) row[static_cast<std::size_t>(i)] = Rational(1);
    poly.add(std::move(row), Relation::kGe, g.value(s));
  }
  poly.add(RationalVector(static_cast<std::size_t>(n), Rational(1)), Relation::kEq, g.value(all));
  return CorePolytope(std::move(poly), n);
}

bool is_balanced(const CoalitionGame& g) {
  const Coalition all = full_coalition(g.num_players);
  const bool by_cover = superadditive_cover_value(g, all) == g.value(all);
  const bool by_core = !core(g).empty();
  if (by_cover != by_core) {
    throw SolverInternalError("balancedness routes disagree (cover vs core feasibility)");
  }
  return by_cover;
}

bool is_totally_balanced(const CoalitionGame& g) { return is_self_concavifying(g); }

namespace {

// Integer vectors 0 <= x <= k1, x != 0, in mixed-radix order; guard first.
std::vector<std::vector<long>> integer_box(int n, long k) {
  double size = 1;
  for (int i = 0; i < n; ++i) size *= static_cast<double>(k + 1);
  if (size > 100000.0) {
    throw SizeGuardError("equal-treatment core enumeration exceeds (k+1)^n <= 100000");
  }
  std::vector<std::vector<long>> out;
  std::vector<long> x(static_cast<std::size_t>(n), 0);
  for (;;) {
    int pos = n - 1;
    while (pos >= 0 && x[static_cast<std::size_t>(pos)] == k) {
      x[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++x[static_cast<std::size_t>(pos)];
    out.push_back(x);
  }
  return out;
}

}  // namespace

CorePolytope equal_treatment_core(const GainsSystem& gains, long k) {
  if (k < 1) throw std::invalid_argument("equal_treatment_core: k >= 1 required");
  const int n = gains.num_types();
  Polytope poly(static_cast<std::size_t>(n));
  const RationalVector k_ones(static_cast<std::size_t>(n), Rational(k));
  poly.add(RationalVector(static_cast<std::size_t>(n), Rational(k)), Relation::kEq,
           gains.value(k_ones));
  for (const std::vector<long>& ix : integer_box(n, k)) {
    RationalVector x(static_cast<std::size_t>(n));
    RationalVector row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = Rational(ix[static_cast<std::size_t>(i)]);
      row[static_cast<std::size_t>(i)] = Rational(ix[static_cast<std::size_t>(i)]);
    }
    poly.add(std::move(row), Relation::kGe, gains.value(x));
  }
  return CorePolytope(std::move(poly), n);
}

CorePolytope equal_treatment_core(const CommunityGame& g, long k) {
  return equal_treatment_core(CommunityGains(g), k);
}

bool core_equivalence(const GainsSystem& gains, long k) {
  const int n = gains.num_types();
  const RationalVector ones(static_cast<std::size_t>(n), Rational(1));
  const PayoffFace face = gains.payoff_face(ones);
  if (face.polytope().dim() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("core_equivalence: payoff face has auxiliary coordinates");
  }
  const CorePolytope etc = equal_treatment_core(gains, k);
  return face.polytope().same_set(etc.polytope());
}

bool core_equivalence(const CommunityGame& g, long k) {
  return core_equivalence(CommunityGains(g), k);
}

ShapleyGradientReport shapley_gradient_comparison(const CommunityGame& g) {
  const CommunityGains gains(g);
  const int n = g.num_types;
  const RationalVector ones(static_cast<std::size_t>(n), Rational(1));
  ShapleyGradientReport report;
  const PayoffFace face = gains.payoff_face(ones);
  auto grad = face.gradient();
  if (!grad) return report;
  report.applicable = true;
  report.gradient = *grad;

  CoalitionGame derived;
  derived.num_players = n;
  derived.values.resize(std::size_t{1} << n);
  const Coalition all = full_coalition(n);
  for (Coalition s = 1; s <= all; ++s) {
    RationalVector x(static_cast<std::size_t>(n));
    for (int i : coalition_members(s)) x[static_cast<std::size_t>(i)] = Rational(1);
    derived.values[s] = gains.value(x);
  }
  report.shapley = shapley_value(derived).values;
  report.equal = report.shapley == report.gradient;
  return report;
}

}  // namespace tug
