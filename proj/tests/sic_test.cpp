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

#include "nlg/sic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlg/errors.hpp"

namespace nlg {
namespace {

RegisterLayout ab(std::size_t da, std::size_t db) { return RegisterLayout({da, db}, {"A", "B"}); }

SuperposedState from_advice(std::size_t k, std::vector<double> p,
                            const std::function<std::vector<Complex>(std::size_t, std::size_t)>& f,
                            std::size_t da, std::size_t db) {
  AdviceEnsemble adv{da, db, {}};
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) adv.states.push_back(PureState::normalized(f(x, y), ab(da, db)));
  }
  return make_superposed_state(k, std::move(p), std::move(adv));
}

std::vector<Complex> basis(std::size_t d, std::size_t i) {
  std::vector<Complex> v(d, 0.0);
  v[i] = 1.0;
  return v;
}

// Objective from the full density matrix, measuring before tracing.
SicTerms oracle_objective(const SuperposedState& s) {
  std::vector<std::string> x{"X"}, y{"Y"}, by{"B", "Y"}, xa{"X", "A"};
  const auto mx = measure_register(s.realized, x);
  const auto my = measure_register(s.realized, y);
  std::vector<std::string> xby{"X", "B", "Y"}, xay{"X", "A", "Y"};
  return {mutual_information(partial_trace(mx, xby), x, by),
          mutual_information(partial_trace(my, xay), y, xa)};
}

const std::vector<double> kUniform2(4, 0.25);

TEST(SuperposedState, RealizationAndValidation) {
  Rng rng(1);
  auto s = random_superposed_state(2, 2, 2, rng);
  EXPECT_NEAR(norm(s.realized.amplitudes()), 1.0, 1e-12);
  std::vector<std::string> xy{"X", "Y"};
  const auto rxy = reduced_state(s.realized, xy);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(rxy.matrix()(i, i).real(), 0.25, 1e-12);
  EXPECT_THROW(make_superposed_state(2, {1, 0, 0}, s.advice), InputError);
  EXPECT_THROW(make_superposed_state(2, {0.5, 0.5, 0.5, 0.5}, s.advice), InputError);
}

TEST(SicObjective, ConstantAdviceIsFree) {
  const double h = 1.0 / std::sqrt(2.0);
  auto s = from_advice(2, kUniform2, [&](auto, auto) { return std::vector<Complex>{h, 0, 0, h}; }, 2, 2);
  EXPECT_NEAR(sic_objective(s).total(), 0.0, 1e-10);
}

TEST(SicObjective, RevealingAdviceCostsTwoBits) {
  auto s = from_advice(2, kUniform2, [](std::size_t x, std::size_t y) {
    return kron(basis(2, y), basis(2, x));  // |y>_A |x>_B
  }, 2, 2);
  const auto t = sic_objective(s);
  EXPECT_NEAR(t.i_x_by, 1.0, 1e-10);
  EXPECT_NEAR(t.i_y_xa, 1.0, 1e-10);
  EXPECT_NEAR(t.total(), 2.0, 1e-10);
}

TEST(SicObjective, OneSidedDependence) {
  auto own = from_advice(2, kUniform2, [](std::size_t x, std::size_t) {
    return kron(basis(2, x), basis(2, 0));
  }, 2, 2);
  EXPECT_NEAR(sic_objective(own).i_y_xa, 0.0, 1e-10);
  EXPECT_NEAR(sic_objective(own).i_x_by, 0.0, 1e-10);
  auto other = from_advice(2, kUniform2, [](std::size_t, std::size_t y) {
    return kron(basis(2, y), basis(2, 0));
  }, 2, 2);
  EXPECT_NEAR(sic_objective(other).i_y_xa, 1.0, 1e-10);
  EXPECT_NEAR(sic_objective(other).i_x_by, 0.0, 1e-10);
}

TEST(SicObjective, MatchesDensityMatrixOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_superposed_state(2 + trial % 2, 2, 2, rng);
    const auto t = sic_objective(s);
    const auto o = oracle_objective(s);
    EXPECT_NEAR(t.i_x_by, o.i_x_by, 1e-10);
    EXPECT_NEAR(t.i_y_xa, o.i_y_xa, 1e-10);
    EXPECT_GE(t.total(), -1e-9);
  }
}

TEST(SicObjective, SeparablePhasesAreFreeButEntangledPhasesAreNot) {
  const std::vector<Complex> base{0.6, 0, 0, 0.8};
  auto phased = [&](double theta) {
    std::vector<Complex> v = base;
    for (auto& z : v) z *= std::polar(1.0, theta);
    return v;
  };
  auto separable = from_advice(2, kUniform2, [&](std::size_t x, std::size_t y) {
    return phased(0.3 * x + 1.1 * y);
  }, 2, 2);
  EXPECT_NEAR(sic_objective(separable).total(), 0.0, 1e-8);
  // Phase pi*x*y flips Bob's view of Y between |+> and |->.
  auto flipped = from_advice(2, kUniform2, [&](std::size_t x, std::size_t y) {
    return phased(std::numbers::pi * x * y);
  }, 2, 2);
  EXPECT_NEAR(sic_objective(flipped).i_x_by, 1.0, 1e-8);
  auto varying = from_advice(2, kUniform2, [&](std::size_t x, std::size_t y) {
    return x == 1 && y == 1 ? std::vector<Complex>{0.8, 0, 0, 0.6} : base;
  }, 2, 2);
  EXPECT_GT(sic_objective(varying).total(), 1e-6);
}

TEST(Decoupling, NothingToDecouple) {
  const double h = 1.0 / std::sqrt(2.0);
  auto s = from_advice(2, kUniform2, [&](auto, auto) { return std::vector<Complex>{h, 0, 0, h}; }, 2, 2);
  const auto d = build_decoupling(s);
  EXPECT_LE(d.delta, 1e-10);
  EXPECT_LE(d.fbar_out, 1e-8);
  EXPECT_LE(d.fbar_alice, 1e-8);
}

TEST(Decoupling, RandomFamiliesRespectBounds) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = random_superposed_state(2, 2, 2, rng);
    const auto d = build_decoupling(s);
    for (const auto& u : d.isometries_alice) {
      EXPECT_EQ(u.rows(), 4u);
      EXPECT_LT((u.adjoint() * u - ComplexMatrix::identity(2)).max_abs(), 1e-8);
    }
    for (const auto& v : d.isometries_bob) {
      EXPECT_LT((v.adjoint() * v - ComplexMatrix::identity(2)).max_abs(), 1e-8);
    }
    EXPECT_TRUE(d.alice_within_bound()) << d.fbar_alice << " vs " << d.delta_alice;
    EXPECT_TRUE(d.bob_within_bound()) << d.fbar_bob << " vs " << d.delta_bob;
    EXPECT_TRUE(d.combined_within_bound()) << d.fbar_out << " vs " << d.delta;
    // Bob's isometries do not touch X.
    EXPECT_NEAR(d.fbar_x_rest, d.fbar_alice, 1e-9);
    EXPECT_NEAR(norm(d.omega3.amplitudes()), 1.0, 1e-10);
  }
}

TEST(Decoupling, AliceStepAttainsFidelityAverage) {
  // <Omega1|Omega'1> = sum_x p_x F(rho_x, rho_+): the Uhlmann overlap is
  // optimal, so Omega1^X x Omega1^{A'BY} sits within the 9-delta bound with
  // room to spare on this slowly varying family.
  Rng rng(4);
  auto s = random_superposed_state(3, 2, 2, rng);
  const auto d = build_decoupling(s);
  EXPECT_LE(d.fbar_alice, 9 * d.delta_alice + 1e-6);
}

TEST(Decoupling, RejectsCorrelatedInputs) {
  const double h = 1.0 / std::sqrt(2.0);
  auto s = from_advice(2, {0.5, 0, 0, 0.5}, [&](auto, auto) {
    return std::vector<Complex>{h, 0, 0, h};
  }, 2, 2);
  EXPECT_THROW(build_decoupling(s), InputError);
}

TEST(SicLowerBound, Examples) {
  EXPECT_NEAR(sic_lower_bound(1.0, 0.0), 1.0 / 81, 1e-15);
  EXPECT_NEAR(sic_lower_bound(0.5, 0.0), (1 - std::sqrt(0.5)) / 81, 1e-15);
  EXPECT_NEAR(sic_lower_bound(0.5, 0.0), 0.003616, 1e-6);
  for (double e : {0.0, 0.1, 0.37, 1.0}) EXPECT_NEAR(sic_lower_bound(e, e), 0.0, 1e-15);
  EXPECT_THROW(sic_lower_bound(1.5, 0.0), InputError);
}

TEST(SicLowerBound, GeneralCaseHoldsOnGrid) {
  const auto r = check_sic_general_case(10000);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_GE(r.worst_margin, 0.0);
}

TEST(SicLowerBound, EighthCaseFailsForSmallEpsilon) {
  const auto r = check_sic_eighth_case(10000);
  EXPECT_GT(r.failures, 0u);
  EXPECT_LT(sic_lower_bound(0.1, 0.1 / 8), 0.1 / 324);
  EXPECT_NEAR(sic_lower_bound(0.1, 0.1 / 8), 0.00027, 1e-5);
  EXPECT_LE(r.fail_lo, 0.1);
}

TEST(SicLowerBound, AngleThirdsInequality) {
  EXPECT_EQ(check_angle_thirds(10000).failures, 0u);
}

TEST(GameShift, EndpointAndShrinkingSlack) {
  const auto one = rel_ent_game_shift_check(1.0, 10001);
  EXPECT_EQ(one.violations, 0u);
  EXPECT_LE(one.root, 0.75);
  EXPECT_NEAR(one.root, 15.0 / 64, 1e-12);
  double prev = one.margin;
  for (double e : {0.5, 0.1, 0.01, 0.001}) {
    const auto r = rel_ent_game_shift_check(e, 10001);
    EXPECT_EQ(r.violations, 0u) << e;
    EXPECT_GE(r.margin, 0.0);
    EXPECT_LT(r.margin, prev);
    prev = r.margin;
  }
}

TEST(GameShift, FirstOrderTightness) {
  for (double e : {1e-2, 1e-3, 1e-4}) {
    const double g = game_shift_distance(1 - e / 4, e);
    EXPECT_NEAR(g / e, 1.0 / 8, 2 * e);
  }
}

}  // namespace
}  // namespace nlg
