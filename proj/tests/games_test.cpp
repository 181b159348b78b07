// Copyright 2026 The nlg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlg/games.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlg/errors.hpp"

namespace nlg {
namespace {

const double kTsirelson = std::pow(std::cos(std::numbers::pi / 8), 2);

// Exhaustive value over both players' deterministic strategies.
double brute_force_classical(const Game& g) {
  const std::size_t k = g.k(), l = g.l();
  std::size_t per_side = 1;
  for (std::size_t i = 0; i < k; ++i) per_side *= l;
  double best = 0.0;
  for (std::size_t sa = 0; sa < per_side; ++sa) {
    const auto a = decode_tuple(sa, l, k);
    for (std::size_t sb = 0; sb < per_side; ++sb) {
      const auto b = decode_tuple(sb, l, k);
      double v = 0.0;
      for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y) v += g.wins(a[x], b[y], x, y) ? g.p(x, y) : 0.0;
      }
      best = std::max(best, v);
    }
  }
  return best;
}

// CHSH on the maximally entangled state with real observables at angles
// (0, t) for Alice and (s, -s) for Bob: correlator cos 2(alpha - beta).
double chsh_angle_grid_oracle() {
  double best = 0.0;
  const int steps = 720;
  for (int i = 0; i <= steps; ++i) {
    const double t = std::numbers::pi * i / steps;
    for (int j = 0; j <= steps; ++j) {
      const double s = std::numbers::pi * j / steps - std::numbers::pi / 2;
      const double alpha[2] = {0.0, t};
      const double beta[2] = {s, -s};
      double total = 0.0;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const double e = std::cos(2 * (alpha[x] - beta[y]));
          total += 0.25 * 0.5 * (1 + ((x & y) ? -e : e));
        }
      }
      best = std::max(best, total);
    }
  }
  return best;
}

Game equality_game() {
  std::vector<std::uint8_t> v(16);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t xy = 0; xy < 4; ++xy) v[(a * 2 + b) * 4 + xy] = a == b;
    }
  }
  return Game(2, 2, std::vector<double>(4, 0.25), v, "equality");
}

Game random_game(std::size_t k, std::size_t l, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(k * k);
  double total = 0.0;
  for (double& x : p) total += (x = u(rng));
  for (double& x : p) x /= total;
  double check = 0.0;
  for (double x : p) check += x;
  p[0] += 1.0 - check;
  std::vector<std::uint8_t> v(l * l * k * k);
  for (auto& b : v) b = u(rng) < 0.5;
  return Game(k, l, p, v);
}

TEST(Game, Validation) {
  EXPECT_THROW(Game(2, 2, {0.5, 0.5, 0.5, 0.5}, std::vector<std::uint8_t>(16)), InputError);
  EXPECT_THROW(Game(2, 2, {0.25, 0.25, 0.25, 0.25}, std::vector<std::uint8_t>(16, 2)),
               InputError);
  EXPECT_THROW(Game(2, 2, {1.0}, std::vector<std::uint8_t>(16)), InputError);
}

TEST(ClassicalValue, Chsh) {
  const auto g = chsh_game();
  const auto cv = classical_value(g);
  EXPECT_NEAR(cv.value, 0.75, 1e-12);
  EXPECT_NEAR(brute_force_classical(g), 0.75, 1e-12);
  EXPECT_NEAR(strategy_win_probability(g, cv.witness), 0.75, 1e-12);
  // Lexicographically smallest optimal pair: everyone answers 0.
  EXPECT_EQ(cv.witness.alice, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(cv.witness.bob, (std::vector<std::size_t>{0, 0}));
}

TEST(ClassicalValue, TrivialGame) { EXPECT_DOUBLE_EQ(classical_value(trivial_game(3, 2)).value, 1.0); }

TEST(ClassicalValue, ChshSquared) {
  const auto g2 = repeat(chsh_game(), 2);
  EXPECT_EQ(g2.k(), 4u);
  EXPECT_EQ(g2.l(), 4u);
  const double v = classical_value(g2).value;
  EXPECT_NEAR(v, 0.625, 1e-12);
  EXPECT_NEAR(brute_force_classical(g2), 0.625, 1e-12);
  EXPECT_GE(v, 0.75 * 0.75);
}

TEST(ClassicalValue, RandomGamesMatchBruteForce) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto g = random_game(2 + seed % 2, 2 + seed % 3, seed);
    const auto cv = classical_value(g);
    EXPECT_NEAR(cv.value, brute_force_classical(g), 1e-12);
    EXPECT_NEAR(strategy_win_probability(g, cv.witness), cv.value, 1e-12);
  }
}

TEST(ClassicalValue, RepetitionNeverBeatsPower) {
  for (unsigned seed = 0; seed < 6; ++seed) {
    const auto g = random_game(2, 2, 100 + seed);
    const double v1 = classical_value(g).value;
    const double v2 = classical_value(repeat(g, 2)).value;
    EXPECT_GE(v2, v1 * v1 - 1e-12);
  }
}

TEST(ClassicalValue, Budget) {
  EXPECT_THROW(classical_value(trivial_game(20, 2)), BudgetError);
  EXPECT_NO_THROW(classical_value(trivial_game(4, 2), 16));
  EXPECT_THROW(classical_value(trivial_game(4, 2), 15), BudgetError);
}

TEST(Repeat, EncodingAndIdentity) {
  const auto g = chsh_game();
  EXPECT_EQ(repeat(g, 1), g);
  const auto g2 = repeat(g, 2);
  // Round 1 is the least significant digit.
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) {
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
          const bool expected = g.wins(a % 2, b % 2, x % 2, y % 2) && g.wins(a / 2, b / 2, x / 2, y / 2);
          EXPECT_EQ(g2.wins(a, b, x, y), expected);
        }
      }
      EXPECT_DOUBLE_EQ(g2.p(x, y), 1.0 / 16);
    }
  }
  const auto t = repeat(trivial_game(2, 2), 3);
  for (auto b : t.v_table()) EXPECT_EQ(b, 1);
  EXPECT_THROW(repeat(g, 20), BudgetError);
  EXPECT_EQ(encode_tuple(decode_tuple(37, 3, 4), 3), 37u);
}

TEST(Majority, Endpoints) {
  const auto g = chsh_game();
  const auto m0 = majority_game(g, 2, 0.0);
  for (auto b : m0.v_table()) EXPECT_EQ(b, 1);
  const auto m1 = majority_game(g, 2, 1.0);
  EXPECT_EQ(m1.v_table(), repeat(g, 2).v_table());
  EXPECT_EQ(m1.p_table(), repeat(g, 2).p_table());
  EXPECT_EQ(majority_threshold(3, 0.5), 2u);
  EXPECT_EQ(majority_threshold(4, 0.5), 2u);
  EXPECT_EQ(majority_threshold(3, 1.0 / 3), 1u);
  EXPECT_THROW(majority_threshold(3, 1.5), InputError);
}

TEST(Majority, WinAtLeastOne) {
  const auto g = chsh_game();
  const auto m = majority_game(g, 2, 0.5);
  // Oracle: enumerate the "at least one round" game directly.
  double best = 0.0;
  for (std::size_t sa = 0; sa < 256; ++sa) {
    const auto a = decode_tuple(sa, 4, 4);
    for (std::size_t sb = 0; sb < 256; ++sb) {
      const auto b = decode_tuple(sb, 4, 4);
      double v = 0.0;
      for (std::size_t x = 0; x < 4; ++x) {
        for (std::size_t y = 0; y < 4; ++y) {
          const bool r1 = g.wins(a[x] % 2, b[y] % 2, x % 2, y % 2);
          const bool r2 = g.wins(a[x] / 2, b[y] / 2, x / 2, y / 2);
          if (r1 || r2) v += 1.0 / 16;
        }
      }
      best = std::max(best, v);
    }
  }
  EXPECT_NEAR(classical_value(m).value, best, 1e-12);
}

TEST(Majority, ValueNonincreasingInAlpha) {
  const auto g = random_game(2, 2, 7);
  double prev = 2.0;
  for (double alpha : {0.0, 0.2, 0.34, 0.5, 0.67, 0.9, 1.0}) {
    const double v = classical_value(majority_game(g, 2, alpha)).value;
    EXPECT_LE(v, prev + 1e-12);
    prev = v;
  }
}

TEST(Predicates, FreeAndProjection) {
  const auto g = chsh_game();
  EXPECT_TRUE(is_free(g));
  EXPECT_TRUE(is_projection(g));
  Game corr(2, 2, {0.5, 0, 0, 0.5}, g.v_table());
  EXPECT_FALSE(is_free(corr));
  EXPECT_FALSE(is_projection(trivial_game(2, 2)));
  EXPECT_TRUE(is_free(repeat(g, 2)));
  EXPECT_TRUE(is_projection(repeat(g, 2)));
}

TEST(Seesaw, ReachesTsirelsonBound) {
  const double oracle = chsh_angle_grid_oracle();
  EXPECT_NEAR(oracle, kTsirelson, 1e-5);
  SeesawOptions opt;
  opt.d = 2;
  opt.restarts = 20;
  opt.seed = 1;
  const auto res = entangled_value_seesaw(chsh_game(), opt);
  EXPECT_GE(res.value, 0.8535);
  EXPECT_GE(res.value, oracle - 5e-4);
  EXPECT_LE(res.value, 1.0 + 1e-9);
  EXPECT_GE(res.value, res.d1_value - 1e-12);
  EXPECT_NEAR(strategy_win_probability(chsh_game(), res.strategy), res.value, 1e-10);
}

TEST(Seesaw, MonotoneAndReplayable) {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const auto g = random_game(2, 3, 200 + seed);
    SeesawOptions opt;
    opt.d = 2;
    opt.restarts = 4;
    opt.iters = 50;
    opt.seed = seed;
    const auto res = entangled_value_seesaw(g, opt);
    for (const auto& t : res.restarts) EXPECT_LE(t.worst_decrease, 1e-10);
    for (std::size_t i = 1; i < res.history.size(); ++i) {
      EXPECT_GE(res.history[i], res.history[i - 1] - 1e-10);
    }
    EXPECT_NEAR(strategy_win_probability(g, res.strategy), res.value, 1e-10);
    EXPECT_LE(res.value, 1.0 + 1e-9);
  }
}

TEST(Seesaw, DimensionOneIsClassical) {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const auto g = random_game(3, 2, 300 + seed);
    SeesawOptions opt;
    opt.d = 1;
    opt.restarts = 8;
    opt.seed = seed;
    const auto res = entangled_value_seesaw(g, opt);
    EXPECT_LE(res.value, classical_value(g).value + 1e-9);
    // The value is achieved by some deterministic strategy.
    ClassicalStrategy det;
    for (const auto& m : res.strategy.alice) {
      for (std::size_t a = 0; a < m.size(); ++a) {
        if (m[a](0, 0).real() > 0.5) det.alice.push_back(a);
      }
    }
    for (const auto& m : res.strategy.bob) {
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (m[b](0, 0).real() > 0.5) det.bob.push_back(b);
      }
    }
    EXPECT_NEAR(strategy_win_probability(g, det), res.value, 1e-12);
  }
}

TEST(Seesaw, TrivialAndEqualityGames) {
  SeesawOptions opt;
  opt.restarts = 2;
  for (std::size_t d : {1u, 2u, 3u}) {
    opt.d = d;
    EXPECT_NEAR(entangled_value_seesaw(trivial_game(2, 2), opt).value, 1.0, 1e-12);
  }
  opt.d = 2;
  EXPECT_NEAR(entangled_value_seesaw(equality_game(), opt).value, 1.0, 1e-12);
  opt.d = 0;
  EXPECT_THROW(entangled_value_seesaw(chsh_game(), opt), InputError);
}

TEST(Seesaw, DeterministicUnderSeedAndJobs) {
  SeesawOptions opt;
  opt.seed = 99;
  opt.restarts = 6;
  const auto a = entangled_value_seesaw(chsh_game(), opt);
  opt.jobs = 3;
  const auto b = entangled_value_seesaw(chsh_game(), opt);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.strategy.state.amplitudes(), b.strategy.state.amplitudes());
}

AdviceEnsemble constant_advice(std::vector<Complex> amps) {
  AdviceEnsemble adv{2, 2, {}};
  for (int i = 0; i < 4; ++i) adv.states.emplace_back(amps, RegisterLayout({2, 2}, {"A", "B"}));
  return adv;
}

TEST(Advice, BellAdviceReachesTsirelson) {
  const double s = 1.0 / std::sqrt(2.0);
  SeesawOptions opt;
  opt.restarts = 20;
  opt.seed = 5;
  const auto adv = constant_advice({s, 0, 0, s});
  const auto res = value_with_advice(chsh_game(), adv, opt);
  EXPECT_GE(res.value, 0.8535);
  EXPECT_NEAR(advice_win_probability(chsh_game(), adv, res.alice, res.bob), res.value, 1e-10);
}

TEST(Advice, ProductAdviceIsClassical) {
  SeesawOptions opt;
  opt.restarts = 20;
  const auto res = value_with_advice(chsh_game(), constant_advice({1, 0, 0, 0}), opt);
  EXPECT_GE(res.value, 0.75 - 1e-9);
  EXPECT_LE(res.value, 0.75 + 1e-6);
  EXPECT_NEAR(classical_value(chsh_game()).value, 0.75, 1e-12);
}

TEST(Advice, RevealingAdviceWins) {
  AdviceEnsemble adv{2, 2, {}};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      std::vector<Complex> amps(4, 0.0);
      amps[y * 2 + x] = 1.0;  // |y>_A |x>_B
      adv.states.emplace_back(amps, RegisterLayout({2, 2}, {"A", "B"}));
    }
  }
  SeesawOptions opt;
  opt.restarts = 10;
  EXPECT_NEAR(value_with_advice(chsh_game(), adv, opt).value, 1.0, 1e-9);
}

TEST(Advice, IndependentAdviceMatchesSharedSeesaw) {
  SeesawOptions opt;
  opt.restarts = 20;
  const auto shared = entangled_value_seesaw(chsh_game(), opt);
  AdviceEnsemble adv{2, 2, {}};
  for (int i = 0; i < 4; ++i) adv.states.push_back(shared.strategy.state);
  const auto fixed = value_with_advice(chsh_game(), adv, opt);
  EXPECT_NEAR(fixed.value, shared.value, 1e-6);
}

TEST(Advice, Validation) {
  AdviceEnsemble adv{2, 2, {}};
  EXPECT_THROW(value_with_advice(chsh_game(), adv, {}), InputError);
  auto bad = constant_advice({1, 0, 0, 0});
  bad.dim_b = 3;
  EXPECT_THROW(value_with_advice(chsh_game(), bad, {}), InputError);
}

TEST(Strategy, ZeroGameAndValidation) {
  Game zero(2, 2, std::vector<double>(4, 0.25), std::vector<std::uint8_t>(16, 0));
  SeesawOptions opt;
  opt.restarts = 2;
  const auto res = entangled_value_seesaw(zero, opt);
  EXPECT_NEAR(strategy_win_probability(zero, res.strategy), 0.0, 1e-12);
  auto broken = res.strategy;
  broken.alice[0][0] *= 0.5;
  EXPECT_THROW(strategy_win_probability(zero, broken), InputError);
}

}  // namespace
}  // namespace nlg
