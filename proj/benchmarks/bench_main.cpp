#include <benchmark/benchmark.h>

#include <random>

#include "tug/charfn.hpp"
#include "tug/game.hpp"
#include "tug/homog.hpp"
#include "tug/lp.hpp"
#include "tug/solutions.hpp"

namespace {

using namespace tug;

LinearProgram random_lp(std::mt19937& rng, int n, int m) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 3);
  RationalVector obj;
  for (int j = 0; j < n; ++j) obj.push_back(Rational(num(rng), den(rng)));
  LinearProgram lp(Sense::kMaximize, obj);
  for (int i = 0; i < m; ++i) {
    RationalVector row;
    for (int j = 0; j < n; ++j) row.push_back(Rational(num(rng), den(rng)));
    lp.add_constraint(row, Relation::kLe, Rational(std::abs(num(rng)) + 1));
  }
  return lp;
}

CoalitionGame random_game(std::mt19937& rng, int n) {
  std::uniform_int_distribution<long> num(0, 8);
  CoalitionGame g;
  g.num_players = n;
  g.values.assign(std::size_t{1} << n, Rational(0));
  for (Coalition s = 1; s < (Coalition{1} << n); ++s) g.values[s] = Rational(num(rng), 2);
  return g;
}

void BM_SolveLp(benchmark::State& state) {
  std::mt19937 rng(7);
  const int n = static_cast<int>(state.range(0));
  const LinearProgram lp = random_lp(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(lp));
  }
}
BENCHMARK(BM_SolveLp)->Arg(5)->Arg(10)->Arg(20);

void BM_CoverValue(benchmark::State& state) {
  std::mt19937 rng(11);
  const int n = static_cast<int>(state.range(0));
  const CoalitionGame g = random_game(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(superadditive_cover_value(g, full_coalition(n)));
  }
}
BENCHMARK(BM_CoverValue)->Arg(4)->Arg(6)->Arg(8);

void BM_Shapley(benchmark::State& state) {
  std::mt19937 rng(13);
  const int n = static_cast<int>(state.range(0));
  const CoalitionGame g = random_game(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shapley_value(g));
  }
}
BENCHMARK(BM_Shapley)->Arg(6)->Arg(8)->Arg(10);

void BM_EulerGap(benchmark::State& state) {
  std::mt19937 rng(17);
  const CoalitionGame g = random_game(rng, 4);
  const CommunityGame community = coalition_to_community(g);
  const RationalVector ones(4, Rational(1));
  const long k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_euler_gap(community, ones, k));
  }
}
BENCHMARK(BM_EulerGap)->Arg(1)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
