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

#pragma once

// Two-player games G = (I, O, V, p) with |I| = k inputs and |O| = l outputs
// per player, their classical and entangled values, and the repeated and
// majority constructions.
//
// Tuple encoding for G^n: a tuple (z_1, ..., z_n) over base b is the index
// z_1 + z_2 b + ... + z_n b^(n-1), i.e. round 1 is the least significant
// digit. The same encoding is used for inputs and outputs.

#include <cstdint>
#include <string>
#include <vector>

#include "nlg/linalg.hpp"
#include "nlg/quantum_info.hpp"

namespace nlg {

class Game {
 public:
  /// `p` is k*k row-major (p[x*k+y]); `v` holds V(a,b|x,y) at
  /// ((a*l+b)*k+x)*k+y. Throws InputError unless p is a distribution
  /// (within 1e-12) and every V entry is 0 or 1.
  Game(std::size_t k, std::size_t l, std::vector<double> p, std::vector<std::uint8_t> v,
       std::string name = "");

  std::size_t k() const { return k_; }
  std::size_t l() const { return l_; }
  const std::string& name() const { return name_; }
  double p(std::size_t x, std::size_t y) const { return p_[x * k_ + y]; }
  bool wins(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    return v_[((a * l_ + b) * k_ + x) * k_ + y] != 0;
  }
  const std::vector<double>& p_table() const { return p_; }
  const std::vector<std::uint8_t>& v_table() const { return v_; }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  std::size_t k_;
  std::size_t l_;
  std::vector<double> p_;
  std::vector<std::uint8_t> v_;
  std::string name_;
};

/// Uniform inputs, win iff a xor b = x and y.
Game chsh_game();
/// V == 1 with uniform inputs.
Game trivial_game(std::size_t k, std::size_t l);

struct ClassicalStrategy {
  std::vector<std::size_t> alice;  // x -> a
  std::vector<std::size_t> bob;    // y -> b
};

struct ClassicalValue {
  double value = 0.0;
  ClassicalStrategy witness;  // lexicographically smallest optimal pair
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1000000;

/// Exact value by enumerating Alice's l^k deterministic strategies against
/// Bob's best response. Throws BudgetError when l^k exceeds `budget`.
ClassicalValue classical_value(const Game& g, std::uint64_t budget = kDefaultEnumerationBudget);

/// Shared pure state on registers (A, B) and projective measurements
/// alice[x][a], bob[y][b].
struct QuantumStrategy {
  PureState state;
  std::vector<std::vector<ComplexMatrix>> alice;
  std::vector<std::vector<ComplexMatrix>> bob;
};

/// Throws InputError unless every measurement is a complete family of
/// orthogonal projectors (within tol) of the right shape for g.
void validate_strategy(const Game& g, const QuantumStrategy& s, double tol = 1e-8);

double strategy_win_probability(const Game& g, const QuantumStrategy& s);
double strategy_win_probability(const Game& g, const ClassicalStrategy& s);

struct SeesawOptions {
  std::size_t d = 2;
  std::size_t restarts = 20;
  std::size_t iters = 200;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  /// Stop a restart once an iteration improves the value by less than this.
  double stall = 1e-13;
};

struct RestartTrace {
  std::size_t restart = 0;
  double initial = 0.0;
  double final = 0.0;
  std::size_t iterations = 0;
  bool stalled = false;        // stopped on the stall criterion before iters
  double worst_decrease = 0.0; // largest drop between iterations (>= 0)
};

struct SeesawResult {
  double value = 0.0;  // lower bound on the d-dimensional entangled value
  QuantumStrategy strategy;
  std::size_t best_restart = 0;
  bool from_d1 = false;  // the best strategy is an embedded d = 1 strategy
  double d1_value = 0.0;
  std::vector<RestartTrace> restarts;
  std::vector<double> history;  // per-iteration values of the best restart
};

/// Alternating optimization over local dimension d. Each restart draws a
/// Haar state and Haar bases with random output labels. A d = 1 run with the
/// same seed is embedded when it does better. Ties go to the lowest restart.
SeesawResult entangled_value_seesaw(const Game& g, const SeesawOptions& opt);

/// Advice states indexed x*k+y, each on registers (A, B) of the same dims.
struct AdviceEnsemble {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<PureState> states;
};

/// Throws InputError unless the ensemble has k*k states of consistent dims.
void validate_advice(const Game& g, const AdviceEnsemble& adv);

struct AdviceResult {
  double value = 0.0;
  std::vector<std::vector<ComplexMatrix>> alice;
  std::vector<std::vector<ComplexMatrix>> bob;
  std::size_t best_restart = 0;
  std::vector<RestartTrace> restarts;
};

/// See-saw over measurements only; the state for (x, y) is fixed to the
/// advice. opt.d is ignored.
AdviceResult value_with_advice(const Game& g, const AdviceEnsemble& adv, const SeesawOptions& opt);

/// Evaluates measurements against an advice ensemble.
double advice_win_probability(const Game& g, const AdviceEnsemble& adv,
                              const std::vector<std::vector<ComplexMatrix>>& alice,
                              const std::vector<std::vector<ComplexMatrix>>& bob);

inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 26;

/// G^n: product distribution and conjunction of the round predicates.
Game repeat(const Game& g, std::size_t n, std::uint64_t budget = kDefaultTableBudget);

/// Winning threshold for the majority game: ceil(alpha n), where alpha n
/// within 1e-9 of an integer counts as that integer.
std::size_t majority_threshold(std::size_t n, double alpha);

/// G^n_alpha: same inputs and outputs as G^n, win iff at least
/// majority_threshold(n, alpha) rounds are won.
Game majority_game(const Game& g, std::size_t n, double alpha,
                   std::uint64_t budget = kDefaultTableBudget);

/// Whether p(x, y) = p_A(x) p_B(y) within 1e-10.
bool is_free(const Game& g);
/// Whether every (x, y, b) has exactly one winning a.
bool is_projection(const Game& g);

/// Digits of `index` in base `base`, least significant first.
std::vector<std::size_t> decode_tuple(std::uint64_t index, std::size_t base, std::size_t n);
std::uint64_t encode_tuple(const std::vector<std::size_t>& digits, std::size_t base);

}  // namespace nlg
