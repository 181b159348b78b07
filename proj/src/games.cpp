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

#include <cmath>
#include <sstream>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t n, std::uint64_t budget,
                          const char* what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (base != 0 && r > budget / base) {
      throw BudgetError(std::string(what) + " exceeds the configured budget");
    }
    r *= base;
  }
  if (r > budget) throw BudgetError(std::string(what) + " exceeds the configured budget");
  return r;
}

}  // namespace

Game::Game(std::size_t k, std::size_t l, std::vector<double> p, std::vector<std::uint8_t> v,
           std::string name)
    : k_(k), l_(l), p_(std::move(p)), v_(std::move(v)), name_(std::move(name)) {
  if (k_ == 0 || l_ == 0) throw InputError("game needs at least one input and one output");
  if (p_.size() != k_ * k_) throw InputError("game: p must have k*k entries");
  if (v_.size() != l_ * l_ * k_ * k_) throw InputError("game: V must have l*l*k*k entries");
  double total = 0.0;
  for (double x : p_) {
    if (!std::isfinite(x) || x < 0.0) throw InputError("game: p has a negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "game: p sums to " << total << ", not 1";
    throw InputError(msg.str());
  }
  for (std::uint8_t b : v_) {
    if (b > 1) throw InputError("game: V entries must be 0 or 1");
  }
}

Game chsh_game() {
  std::vector<std::uint8_t> v(16);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) v[((a * 2 + b) * 2 + x) * 2 + y] = (a ^ b) == (x & y);
      }
    }
  }
  return Game(2, 2, std::vector<double>(4, 0.25), std::move(v), "chsh");
}

Game trivial_game(std::size_t k, std::size_t l) {
  const double u = 1.0 / static_cast<double>(k * k);
  return Game(k, l, std::vector<double>(k * k, u), std::vector<std::uint8_t>(l * l * k * k, 1),
              "trivial");
}

ClassicalValue classical_value(const Game& g, std::uint64_t budget) {
  const std::size_t k = g.k(), l = g.l();
  const std::uint64_t count = checked_pow(l, k, budget, "classical enumeration l^k");
  ClassicalValue best;
  best.value = -1.0;
  std::vector<std::size_t> alice(k, 0);
  std::vector<std::size_t> bob(k, 0);
  for (std::uint64_t s = 0; s < count; ++s) {
    if (s > 0) {
      // Lexicographic successor: the last input varies fastest.
      for (std::size_t x = k; x-- > 0;) {
        if (++alice[x] < l) break;
        alice[x] = 0;
      }
    }
    double total = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      double top = -1.0;
      for (std::size_t b = 0; b < l; ++b) {
        double score = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
          if (g.wins(alice[x], b, x, y)) score += g.p(x, y);
        }
        if (score > top) {
          top = score;
          bob[y] = b;
        }
      }
      total += top;
    }
    if (total > best.value + 1e-12) {
      best.value = total;
      best.witness = {alice, bob};
    }
  }
  return best;
}

double strategy_win_probability(const Game& g, const ClassicalStrategy& s) {
  if (s.alice.size() != g.k() || s.bob.size() != g.k()) {
    throw InputError("classical strategy size does not match the game");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < g.k(); ++x) {
    for (std::size_t y = 0; y < g.k(); ++y) {
      if (s.alice[x] >= g.l() || s.bob[y] >= g.l()) throw InputError("output out of range");
      if (g.wins(s.alice[x], s.bob[y], x, y)) total += g.p(x, y);
    }
  }
  return total;
}

std::vector<std::size_t> decode_tuple(std::uint64_t index, std::size_t base, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = static_cast<std::size_t>(index % base);
    index /= base;
  }
  return d;
}

std::uint64_t encode_tuple(const std::vector<std::size_t>& digits, std::size_t base) {
  std::uint64_t index = 0;
  for (std::size_t i = digits.size(); i-- > 0;) index = index * base + digits[i];
  return index;
}

namespace {

// Builds the n-fold tables; `accept(wins)` turns a win count into V'.
template <typename Accept>
Game product_game(const Game& g, std::size_t n, std::uint64_t budget, Accept accept,
                  std::string name) {
  if (n == 0) throw InputError("number of rounds must be at least 1");
  const std::size_t k = g.k(), l = g.l();
  const std::uint64_t kn = checked_pow(k, n, budget, "repeated input count");
  const std::uint64_t ln = checked_pow(l, n, budget, "repeated output count");
  checked_pow(kn * ln, 2, budget, "repeated predicate table");
  const std::size_t K = kn, L = ln;

  std::vector<double> p(K * K);
  for (std::size_t x = 0; x < K; ++x) {
    const auto xs = decode_tuple(x, k, n);
    for (std::size_t y = 0; y < K; ++y) {
      const auto ys = decode_tuple(y, k, n);
      double q = 1.0;
      for (std::size_t i = 0; i < n; ++i) q *= g.p(xs[i], ys[i]);
      p[x * K + y] = q;
    }
  }
  // Renormalize rounding so the product distribution passes validation.
  double total = 0.0;
  for (double q : p) total += q;
  for (double& q : p) q /= total;

  std::vector<std::vector<std::size_t>> in(K), out(L);
  for (std::size_t x = 0; x < K; ++x) in[x] = decode_tuple(x, k, n);
  for (std::size_t a = 0; a < L; ++a) out[a] = decode_tuple(a, l, n);
  std::vector<std::uint8_t> v(L * L * K * K);
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = 0; b < L; ++b) {
      for (std::size_t x = 0; x < K; ++x) {
        for (std::size_t y = 0; y < K; ++y) {
          std::size_t won = 0;
          for (std::size_t i = 0; i < n; ++i) {
            won += g.wins(out[a][i], out[b][i], in[x][i], in[y][i]) ? 1 : 0;
          }
          v[((a * L + b) * K + x) * K + y] = accept(won) ? 1 : 0;
        }
      }
    }
  }
  return Game(K, L, std::move(p), std::move(v), std::move(name));
}

}  // namespace

Game repeat(const Game& g, std::size_t n, std::uint64_t budget) {
  if (n == 1) return g;
  return product_game(g, n, budget, [n](std::size_t won) { return won == n; },
                      g.name() + "^" + std::to_string(n));
}

std::size_t majority_threshold(std::size_t n, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
  return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-9));
}

Game majority_game(const Game& g, std::size_t n, double alpha, std::uint64_t budget) {
  const std::size_t threshold = majority_threshold(n, alpha);
  std::ostringstream name;
  name << g.name() << "^" << n << "_" << alpha;
  return product_game(g, n, budget, [threshold](std::size_t won) { return won >= threshold; },
                      name.str());
}

bool is_free(const Game& g) {
  const std::size_t k = g.k();
  std::vector<double> pa(k, 0.0), pb(k, 0.0);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      pa[x] += g.p(x, y);
      pb[y] += g.p(x, y);
    }
  }
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      if (std::abs(g.p(x, y) - pa[x] * pb[y]) > 1e-10) return false;
    }
  }
  return true;
}

bool is_projection(const Game& g) {
  for (std::size_t x = 0; x < g.k(); ++x) {
    for (std::size_t y = 0; y < g.k(); ++y) {
      for (std::size_t b = 0; b < g.l(); ++b) {
        std::size_t winners = 0;
        for (std::size_t a = 0; a < g.l(); ++a) winners += g.wins(a, b, x, y) ? 1 : 0;
        if (winners != 1) return false;
      }
    }
  }
  return true;
}

}  // namespace nlg
