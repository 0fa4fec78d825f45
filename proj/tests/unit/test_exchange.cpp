#include <doctest.h>

#include "fixtures.hpp"
#include "tug/exchange.hpp"

using namespace tug;
using namespace tug::testing;

namespace {

// Two types, two commodities; each can stand pat or swap one unit of its
// abundant good for the other's. F(x) = 4 min(x1, x2).
ExchangeEconomy two_type_swap() {
  ExchangeEconomy e;
  e.num_commodities = 2;
  e.types.push_back({{vec({R(0), R(0)}), vec({R(-1), R(1)})}, vec({R(1), R(3)})});
  e.types.push_back({{vec({R(0), R(0)}), vec({R(1), R(-1)})}, vec({R(3), R(1)})});
  return e;
}

ExchangeEconomy autarky() {
  ExchangeEconomy e;
  e.num_commodities = 2;
  e.types.push_back({{vec({R(0), R(0)})}, vec({R(1), R(1)})});
  e.types.push_back({{vec({R(0), R(0)})}, vec({R(2), R(1)})});
  return e;
}

ExchangeEconomy random_economy(RationalSource& src, int n) {
  ExchangeEconomy e;
  e.num_commodities = static_cast<int>(src.integer(1, 2));
  for (int i = 0; i < n; ++i) {
    ExchangeType t;
    t.trades.push_back(RationalVector(static_cast<std::size_t>(e.num_commodities), R(0)));
    const long extra = src.integer(1, 2);
    for (long a = 0; a < extra; ++a) {
      RationalVector col;
      for (int c = 0; c < e.num_commodities; ++c) col.push_back(src.signed_value(3, 2));
      t.trades.push_back(std::move(col));
    }
    for (int c = 0; c < e.num_commodities; ++c) t.values.push_back(src.nonneg(4, 2));
    e.types.push_back(std::move(t));
  }
  return e;
}

}  // namespace

TEST_CASE("exchange validation") {
  CHECK(validate(two_type_swap()).empty());
  SUBCASE("missing no-trade column") {
    ExchangeEconomy e = two_type_swap();
    e.types[0].trades.erase(e.types[0].trades.begin());
    const auto bad = validate(e);
    REQUIRE(!bad.empty());
    CHECK(bad[0] == "types[1].trades: no all-zero no-trade activity");
  }
  SUBCASE("negative commodity value") {
    ExchangeEconomy e = two_type_swap();
    e.types[1].values[0] = R(-1);
    CHECK(!validate(e).empty());
  }
}

TEST_CASE("market value of the two-type swap economy") {
  const ExchangeEconomy e = two_type_swap();
  CHECK(market_value(e, vec({R(1), R(1)})) == R(4));
  CHECK(market_value(e, vec({R(1), R(0)})) == R(0));  // no counterparty
  CHECK(market_value(e, vec({R(2), R(2)})) == R(8));  // homogeneity
  CHECK(market_value(e, vec({R(2), R(1)})) == R(4));  // min form
  CHECK(market_value(e, vec({R(1, 2), R(3)})) == R(2));
}

TEST_CASE("walras outcome of the two-type swap economy") {
  const ExchangeEconomy e = two_type_swap();
  const RationalVector ones = vec({R(1), R(1)});
  const WalrasOutcome w = walras(e, ones);
  CHECK(w.value == R(4));
  CHECK(w.payoffs == vec({R(2), R(2)}));
  CHECK(w.transfers == vec({R(0), R(0)}));
  CHECK(w.mixtures[0] == vec({R(0), R(1)}));
  CHECK(w.mixtures[1] == vec({R(0), R(1)}));

  // Exact market clearing.
  for (int c = 0; c < e.num_commodities; ++c) {
    Rational net;
    for (std::size_t i = 0; i < e.types.size(); ++i) {
      for (std::size_t a = 0; a < e.types[i].trades.size(); ++a) {
        net += w.mixtures[i][a] * e.types[i].trades[a][static_cast<std::size_t>(c)];
      }
    }
    CHECK(net == R(0));
  }

  // Every used activity maximizes (v_i - p) . E_i(a).
  for (std::size_t i = 0; i < e.types.size(); ++i) {
    RationalVector net_value(e.types[i].trades.size());
    for (std::size_t a = 0; a < e.types[i].trades.size(); ++a) {
      net_value[a] = activity_value(e, static_cast<int>(i), a) -
                     dot(w.prices, e.types[i].trades[a]);
    }
    Rational best = net_value[0];
    for (const Rational& v : net_value) best = std::max(best, v);
    for (std::size_t a = 0; a < net_value.size(); ++a) {
      if (!w.mixtures[i][a].is_zero()) CHECK(net_value[a] == best);
    }
  }

  // The reference pair p = (2,2), r = (2,2) is a valid optimal dual point:
  // it lies on the price face with the canonical payoffs.
  const PayoffFace face = ExchangeGains(e).payoff_face(ones);
  CHECK(face.polytope().contains(vec({R(2), R(2), R(2), R(2)})));
  auto [plo, phi] = price_range(e, ones, 0);
  CHECK(plo.status == LpStatus::kUnbounded);  // balanced trades leave the level free
}

TEST_CASE("walras at (2,1): excess type-1 supply") {
  const ExchangeEconomy e = two_type_swap();
  const RationalVector x = vec({R(2), R(1)});
  const WalrasOutcome w = walras(e, x);
  CHECK(w.value == R(4));
  CHECK(w.payoffs == vec({R(0), R(4)}));  // forced by complementary slackness
  CHECK(w.payoffs[0] < R(2));
  CHECK(w.payoffs[1] > R(2));
  CHECK(dot(w.payoffs, x) == R(4));
  CHECK(w.mixtures[0] == vec({R(1, 2), R(1, 2)}));  // half of type 1 idles
  CHECK(dot(w.transfers, x) == R(0));
  // Slackness pins the price spread at -2; the canonical level starts at 0.
  CHECK(w.prices == vec({R(0), R(2)}));
}

TEST_CASE("autarky economy") {
  const ExchangeEconomy e = autarky();
  const RationalVector ones = vec({R(1), R(1)});
  CHECK(market_value(e, ones) == R(0));
  const WalrasOutcome w = walras(e, ones);
  CHECK(w.payoffs == vec({R(0), R(0)}));
  CHECK(w.value == R(0));
}

TEST_CASE("exchange characteristic function") {
  SUBCASE("two-type swap") {
    const CoalitionGame v = exchange_characteristic(two_type_swap());
    CHECK(v.value(0b01) == R(0));
    CHECK(v.value(0b10) == R(0));
    CHECK(v.value(0b11) == R(4));
  }
  SUBCASE("autarky is identically zero") {
    const CoalitionGame v = exchange_characteristic(autarky());
    for (const Rational& value : v.values) CHECK(value == R(0));
  }
  SUBCASE("three types: pairwise values recorded and totally balanced") {
    ExchangeEconomy e = two_type_swap();
    // Type 3 can swap like type 2 but values the goods less.
    e.types.push_back({{vec({R(0), R(0)}), vec({R(1), R(-1)})}, vec({R(2), R(1)})});
    const CoalitionGame v = exchange_characteristic(e);
    CHECK(v.value(0b011) == R(4));  // 1-2 trade dominates
    CHECK(v.value(0b101) == R(3));  // 1-3 trade is worth less
    CHECK(v.value(0b110) == R(0));  // 2 and 3 want the same side of the market
    CHECK(v.value(0b111) == R(4));
    CHECK(is_self_concavifying(v));
  }
}

TEST_CASE("exchange euler analysis") {
  const ExchangeEconomy e = two_type_swap();
  SUBCASE("at 1: every gap is 4, face is a segment") {
    const ExchangeEulerReport rep = exchange_euler_analysis(e, vec({R(1), R(1)}), 4);
    for (const Rational& gap : rep.sweep.discrete) CHECK(gap == R(4));
    CHECK(rep.sweep.infinitesimal == R(4));
    CHECK(!rep.differentiability.differentiable);
    CHECK(rep.characteristic_totally_balanced);
  }
  SUBCASE("at (2,1): differentiable with gradient (0,4)") {
    const ExchangeEulerReport rep = exchange_euler_analysis(e, vec({R(2), R(1)}), 3);
    CHECK(rep.sweep.infinitesimal == R(0));
    REQUIRE(rep.differentiability.differentiable);
    CHECK(*rep.differentiability.gradient == vec({R(0), R(4)}));
    for (const Rational& gap : rep.sweep.discrete) CHECK(gap == R(0));
  }
  SUBCASE("autarky: every gap is 0") {
    const ExchangeEulerReport rep = exchange_euler_analysis(autarky(), vec({R(1), R(1)}), 3);
    CHECK(rep.sweep.infinitesimal == R(0));
    for (const Rational& gap : rep.sweep.discrete) CHECK(gap == R(0));
  }
}

TEST_CASE("exchange homogeneity and superadditivity") {
  RationalSource src(149);
  const Rational lambdas[] = {R(2), R(3), R(1, 2)};
  for (int round = 0; round < 8; ++round) {
    const int n = static_cast<int>(src.integer(2, 3));
    const ExchangeEconomy e = random_economy(src, n);
    const RationalVector x = random_population(src, n);
    const RationalVector y = random_population(src, n);
    const Rational fx = market_value(e, x);
    CHECK(fx >= R(0));  // no-trade lower bound
    for (const Rational& lambda : lambdas) {
      CHECK(market_value(e, scale(x, lambda)) == lambda * fx);
    }
    CHECK(market_value(e, add(x, y)) >= fx + market_value(e, y));
    // Self-concavity: the derived coalition game is totally balanced on
    // every instance.
    CHECK(is_self_concavifying(exchange_characteristic(e)));
  }
}
