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

#include "nlg/protocol_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nlg/errors.hpp"
#include "nlg/parallel.hpp"

namespace nlg {
namespace {

constexpr std::uint64_t kGeneralStream = 0x434845434b000001ULL;
constexpr std::uint64_t kProjectionStream = 0x434845434b000002ULL;
constexpr std::size_t kBlockTrials = 4096;
constexpr std::uint64_t kOutcomeBudget = std::uint64_t{1} << 22;

std::size_t ceil_slack(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

void require_probability(double v, const std::string& what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InputError(what + " must be in [0, 1]");
}

std::size_t bits_for(std::size_t l) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < l) ++b;
  return std::max<std::size_t>(b, 1);
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::general ? "general" : "projection"; }

Variant variant_from_string(const std::string& s) {
  if (s == "general") return Variant::general;
  if (s == "projection") return Variant::projection;
  throw InputError("variant must be 'general' or 'projection', got '" + s + "'");
}

std::size_t required_v(double epsilon, double t, Variant variant) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must be in (0, 1]");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("t must be finite and >= 0");
  const double log_inv = -std::log2(epsilon);
  const double v = variant == Variant::general ? 256.0 / epsilon * (t + log_inv + 8.0)
                                               : 32.0 / epsilon * (t + log_inv + 9.0);
  return ceil_slack(v);
}

void validate_config(const ProtocolConfig& c) {
  if (c.n < 1) throw InputError("config.n must be at least 1");
  if (!(c.epsilon > 0.0 && c.epsilon <= 1.0)) throw InputError("config.epsilon must be in (0, 1]");
  if (!(c.t >= 0.0) || !std::isfinite(c.t)) throw InputError("config.t must be finite and >= 0");
  if (c.trials < 1) throw InputError("config.trials must be at least 1");
  if (c.v_override && *c.v_override < 1) throw InputError("config.v must be at least 1");
  if (effective_hash_bits(c) > 64) throw InputError("config.hash_bits must be at most 64");
  if (c.answer_bits && (*c.answer_bits < 1 || *c.answer_bits > 32)) {
    throw InputError("config.answer_bits must be in [1, 32]");
  }
}

std::size_t effective_v(const ProtocolConfig& c) {
  return c.v_override ? *c.v_override : required_v(c.epsilon, c.t, c.variant);
}

std::size_t effective_hash_bits(const ProtocolConfig& c) {
  return c.hash_bits ? *c.hash_bits : ceil_slack(2.0 * c.t);
}

std::size_t most_win_threshold(std::size_t n, double epsilon) {
  return ceil_slack((1.0 - epsilon / 256.0) * double(n));
}

// ---------------------------------------------------------------------------
// Outcome models

RoundOutcomeModel RoundOutcomeModel::iid_bernoulli(double w) {
  require_probability(w, "model.w");
  RoundOutcomeModel m;
  m.kind_ = Kind::iid_bernoulli;
  m.w_ = w;
  return m;
}

RoundOutcomeModel RoundOutcomeModel::win_all_or_partial(double q, double f) {
  require_probability(q, "model.q");
  require_probability(f, "model.f");
  RoundOutcomeModel m;
  m.kind_ = Kind::win_all_or_partial;
  m.q_ = q;
  m.f_ = f;
  return m;
}

namespace {

// Joint outcome tables shared by both strategy kinds. mass(X, Y, A, B) gives
// the probability of answers (A, B) on inputs (X, Y) of the n-fold game.
template <typename Mass>
void build_outcomes(const Game& g, std::size_t n, const Game& rg, Mass&& mass,
                    std::vector<double>& cdf, std::vector<std::vector<std::uint8_t>>& won,
                    std::vector<std::vector<std::uint32_t>>& diff) {
  const std::uint64_t K = rg.k(), L = rg.l();
  if (K * K * L * L > kOutcomeBudget) throw BudgetError("strategy-backed model is too large");
  const bool proj = is_projection(g);
  double total = 0;
  for (std::uint64_t X = 0; X < K; ++X) {
    for (std::uint64_t Y = 0; Y < K; ++Y) {
      if (rg.p(X, Y) == 0.0) continue;
      const auto xs = decode_tuple(X, g.k(), n);
      const auto ys = decode_tuple(Y, g.k(), n);
      for (std::uint64_t A = 0; A < L; ++A) {
        const auto as = decode_tuple(A, g.l(), n);
        for (std::uint64_t B = 0; B < L; ++B) {
          const double m = mass(X, Y, A, B);
          if (m <= 0.0) continue;
          const auto bs = decode_tuple(B, g.l(), n);
          std::vector<std::uint8_t> w(n);
          std::vector<std::uint32_t> d(n);
          for (std::size_t i = 0; i < n; ++i) {
            w[i] = g.wins(as[i], bs[i], xs[i], ys[i]) ? 1 : 0;
            if (proj) {
              std::size_t alpha = 0;
              while (!g.wins(alpha, bs[i], xs[i], ys[i])) ++alpha;
              d[i] = static_cast<std::uint32_t>(as[i] ^ alpha);
            } else {
              d[i] = w[i] ? 0 : 1;
            }
          }
          total += m;
          cdf.push_back(total);
          won.push_back(std::move(w));
          diff.push_back(std::move(d));
        }
      }
    }
  }
  if (cdf.empty()) throw InputError("strategy has no outcome with positive probability");
  for (auto& c : cdf) c /= total;
}

}  // namespace

RoundOutcomeModel RoundOutcomeModel::strategy_backed(const Game& g, std::size_t n,
                                                     const QuantumStrategy& s) {
  const Game rg = repeat(g, n);
  validate_strategy(rg, s);
  RoundOutcomeModel m;
  m.kind_ = Kind::strategy_backed;
  m.rounds_ = n;
  m.outputs_ = g.l();
  m.projection_ = is_projection(g);
  m.game_name_ = g.name();
  const auto& lay = s.state.layout();
  const std::size_t da = lay.dims()[0], db = lay.dims()[1];
  ComplexMatrix phi(da, db, s.state.amplitudes());
  // <psi| A (x) B |psi> = sum_ij (phi^dag A phi)_ij B_ij.
  std::vector<std::vector<ComplexMatrix>> reduced(rg.k());
  for (std::size_t x = 0; x < rg.k(); ++x) {
    for (const auto& a : s.alice[x]) reduced[x].push_back(phi.adjoint() * a * phi);
  }
  auto mass = [&](std::uint64_t X, std::uint64_t Y, std::uint64_t A, std::uint64_t B) {
    const auto& M = reduced[X][A];
    const auto& Bm = s.bob[Y][B];
    Complex acc = 0;
    for (std::size_t i = 0; i < db; ++i) {
      for (std::size_t j = 0; j < db; ++j) acc += M(i, j) * Bm(i, j);
    }
    const double pr = acc.real();
    return pr > 1e-15 ? rg.p(X, Y) * pr : 0.0;
  };
  build_outcomes(g, n, rg, mass, m.cdf_, m.won_, m.diff_);
  return m;
}

RoundOutcomeModel RoundOutcomeModel::strategy_backed(const Game& g, std::size_t n,
                                                     const ClassicalStrategy& s) {
  const Game rg = repeat(g, n);
  if (s.alice.size() != rg.k() || s.bob.size() != rg.k()) {
    throw InputError("classical strategy must map every input tuple");
  }
  for (std::size_t x = 0; x < rg.k(); ++x) {
    if (s.alice[x] >= rg.l() || s.bob[x] >= rg.l()) throw InputError("classical answer out of range");
  }
  RoundOutcomeModel m;
  m.kind_ = Kind::strategy_backed;
  m.rounds_ = n;
  m.outputs_ = g.l();
  m.projection_ = is_projection(g);
  m.game_name_ = g.name();
  auto mass = [&](std::uint64_t X, std::uint64_t Y, std::uint64_t A, std::uint64_t B) {
    return s.alice[X] == A && s.bob[Y] == B ? rg.p(X, Y) : 0.0;
  };
  build_outcomes(g, n, rg, mass, m.cdf_, m.won_, m.diff_);
  return m;
}

double RoundOutcomeModel::win_all_probability(std::size_t n) const {
  switch (kind_) {
    case Kind::iid_bernoulli: return std::pow(w_, double(n));
    case Kind::win_all_or_partial: {
      const auto won = static_cast<std::size_t>(std::floor(f_ * double(n)));
      return won >= n ? 1.0 : q_;
    }
    case Kind::strategy_backed: break;
  }
  double total = 0, prev = 0;
  for (std::size_t i = 0; i < cdf_.size(); ++i) {
    if (std::all_of(won_[i].begin(), won_[i].end(), [](auto b) { return b != 0; })) {
      total += cdf_[i] - prev;
    }
    prev = cdf_[i];
  }
  return total;
}

void RoundOutcomeModel::sample(std::size_t n, std::size_t answer_bits, Rng& rng,
                               Outcome& out) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (kind_ == Kind::strategy_backed) {
    const double u = unit(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
    out.won = won_[idx];
    out.diff = diff_[idx];
    return;
  }
  out.won.assign(n, 1);
  if (kind_ == Kind::iid_bernoulli) {
    std::bernoulli_distribution win(w_);
    for (auto& b : out.won) b = win(rng) ? 1 : 0;
  } else if (unit(rng) >= q_) {
    const auto keep = static_cast<std::size_t>(std::floor(f_ * double(n)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // The first n - keep entries of a partial shuffle are the lost rounds.
    for (std::size_t i = 0; i + keep < n; ++i) {
      std::swap(idx[i], idx[std::uniform_int_distribution<std::size_t>(i, n - 1)(rng)]);
      out.won[idx[i]] = 0;
    }
  }
  out.diff.assign(n, 0);
  const std::uint32_t top = answer_bits >= 32 ? 0xffffffffu : (std::uint32_t{1} << answer_bits) - 1;
  std::uniform_int_distribution<std::uint32_t> symbol(1, top);
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.won[i]) out.diff[i] = symbol(rng);
  }
}

Json RoundOutcomeModel::to_json() const {
  Json j;
  switch (kind_) {
    case Kind::iid_bernoulli:
      j["kind"] = "iid_bernoulli";
      j["w"] = w_;
      break;
    case Kind::win_all_or_partial:
      j["kind"] = "win_all_or_partial";
      j["q"] = q_;
      j["f"] = f_;
      break;
    case Kind::strategy_backed:
      j["kind"] = "strategy_backed";
      j["game"] = game_name_;
      j["rounds"] = rounds_;
      j["outcomes"] = cdf_.size();
      break;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Hashing

Gf2LinearHash::Gf2LinearHash(std::size_t in_bits, std::size_t out_bits,
                             std::vector<std::vector<std::uint64_t>> rows)
    : in_bits_(in_bits), rows_(std::move(rows)) {
  const std::size_t words = (in_bits + 63) / 64;
  if (out_bits > 64 || rows_.size() != out_bits) throw InputError("hash needs out_bits <= 64 rows");
  for (auto& r : rows_) {
    if (r.size() != words) throw InputError("hash row has the wrong word count");
    if (in_bits % 64 != 0 && words > 0) r.back() &= (std::uint64_t{1} << (in_bits % 64)) - 1;
  }
}

Gf2LinearHash Gf2LinearHash::random(std::size_t in_bits, std::size_t out_bits, Rng& rng) {
  const std::size_t words = (in_bits + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(out_bits, std::vector<std::uint64_t>(words));
  for (auto& r : rows) {
    for (auto& w : r) w = rng();
  }
  return Gf2LinearHash(in_bits, out_bits, std::move(rows));
}

std::uint64_t Gf2LinearHash::apply(std::span<const std::uint64_t> x) const {
  const std::size_t words = (in_bits_ + 63) / 64;
  if (x.size() != words) throw InputError("hash input has the wrong word count");
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words; ++w) acc ^= rows_[j][w] & x[w];
    out |= std::uint64_t(std::popcount(acc) & 1) << j;
  }
  return out;
}

UniversalityReport verify_universality(std::size_t max_width) {
  if (max_width < 1 || max_width > 12) throw InputError("universality width must be in [1, 12]");
  UniversalityReport rep;
  rep.max_width = max_width;
  auto note = [&](double observed, double expected) {
    const double dev = std::abs(observed - expected);
    rep.worst_deviation = std::max(rep.worst_deviation, dev);
    if (dev != 0.0) rep.exact = false;
  };
  // Rows are independent and uniform, so Pr[h(d) = 0] = Pr_row[<row, d> = 0]^out.
  // Every row is enumerated for every nonzero d at each input width.
  for (std::size_t m = 1; m <= max_width; ++m) {
    const std::uint64_t size = std::uint64_t{1} << m;
    for (std::uint64_t d = 1; d < size; ++d) {
      std::uint64_t zero = 0;
      for (std::uint64_t r = 0; r < size; ++r) {
        const Gf2LinearHash h(m, 1, {{r}});
        zero += h.apply(std::span<const std::uint64_t>(&d, 1)) == 0 ? 1 : 0;
      }
      ++rep.row_cases;
      const double p_row = double(zero) / double(size);
      for (std::size_t out = 1; out <= max_width; ++out) note(std::pow(p_row, double(out)), std::ldexp(1.0, -int(out)));
    }
  }
  // Whole-map enumeration where it is cheap.
  for (std::size_t m = 1; m <= max_width; ++m) {
    for (std::size_t out = 1; out <= max_width && m * out <= 16; ++out) {
      const std::uint64_t maps = std::uint64_t{1} << (m * out);
      const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
      for (std::uint64_t d = 1; d <= mask; ++d) {
        std::uint64_t collide = 0;
        for (std::uint64_t code = 0; code < maps; ++code) {
          std::vector<std::vector<std::uint64_t>> rows(out);
          for (std::size_t j = 0; j < out; ++j) rows[j] = {(code >> (j * m)) & mask};
          const Gf2LinearHash h(m, out, std::move(rows));
          collide += h.apply(std::span<const std::uint64_t>(&d, 1)) == 0 ? 1 : 0;
        }
        note(double(collide) / double(maps), std::ldexp(1.0, -int(out)));
      }
      rep.full_maps += maps;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Simulation

Estimate wilson_estimate(std::size_t hits, std::size_t samples) {
  Estimate e;
  e.hits = hits;
  e.samples = samples;
  if (samples == 0) return e;
  e.defined = true;
  const double n = double(samples);
  const double p = double(hits) / n;
  const double z2 = kWilsonZ99 * kWilsonZ99;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = kWilsonZ99 / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  e.value = p;
  e.ci_lo = std::max(0.0, center - half);
  e.ci_hi = std::min(1.0, center + half);
  return e;
}

namespace {

struct Counts {
  std::size_t success = 0;
  std::size_t most_win = 0;
  std::size_t mismatch = 0;
  std::size_t mismatch_accept = 0;
};

ProtocolStats simulate(const ProtocolConfig& c, const RoundOutcomeModel& model, bool hashed) {
  validate_config(c);
  if (model.kind() == RoundOutcomeModel::Kind::strategy_backed) {
    if (model.rounds() != c.n) throw InputError("strategy-backed model has a different round count than config.n");
    if (hashed && !model.projection_game()) throw InputError("projection variant needs a projection game");
  }
  ProtocolStats st;
  st.variant = c.variant;
  st.v_used = effective_v(c);
  st.hash_bits = hashed ? effective_hash_bits(c) : 0;
  st.answer_bits = c.answer_bits ? *c.answer_bits
                   : model.kind() == RoundOutcomeModel::Kind::strategy_backed ? bits_for(model.outputs())
                                                                               : 1;
  st.threshold = most_win_threshold(c.n, c.epsilon);
  st.trials = c.trials;
  const std::size_t v = st.v_used;
  const std::size_t in_bits = v * st.answer_bits;
  const std::size_t blocks = (c.trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<Counts> counts(blocks);
  const std::uint64_t stream = hashed ? kProjectionStream : kGeneralStream;
  parallel_for(blocks, c.jobs, [&](std::size_t b) {
    Rng rng(derive_seed(c.seed, stream, b));
    std::uniform_int_distribution<std::size_t> index(0, c.n - 1);
    RoundOutcomeModel::Outcome o;
    std::vector<std::uint64_t> packed((in_bits + 63) / 64);
    Counts& k = counts[b];
    const std::size_t end = std::min(c.trials, (b + 1) * kBlockTrials);
    for (std::size_t trial = b * kBlockTrials; trial < end; ++trial) {
      model.sample(c.n, st.answer_bits, rng, o);
      const auto wins = static_cast<std::size_t>(std::count(o.won.begin(), o.won.end(), 1));
      bool ok = true;
      if (!hashed) {
        for (std::size_t j = 0; j < v && ok; ++j) ok = o.won[index(rng)] != 0;
      } else {
        // Bob accepts iff h(a^C) = h(alpha^C), i.e. h(a^C xor alpha^C) = 0.
        std::fill(packed.begin(), packed.end(), 0);
        bool differ = false;
        for (std::size_t j = 0; j < v; ++j) {
          const std::uint64_t sym = o.diff[index(rng)];
          if (sym == 0) continue;
          differ = true;
          const std::size_t pos = j * st.answer_bits;
          packed[pos / 64] |= sym << (pos % 64);
          if (pos % 64 + st.answer_bits > 64) packed[pos / 64 + 1] |= sym >> (64 - pos % 64);
        }
        if (differ) {
          ++k.mismatch;
          const auto h = Gf2LinearHash::random(in_bits, st.hash_bits, rng);
          ok = h.apply(packed) == 0;
          k.mismatch_accept += ok ? 1 : 0;
        }
      }
      if (ok) {
        ++k.success;
        k.most_win += wins >= st.threshold ? 1 : 0;
      }
    }
  });
  Counts total;
  for (const auto& k : counts) {
    total.success += k.success;
    total.most_win += k.most_win;
    total.mismatch += k.mismatch;
    total.mismatch_accept += k.mismatch_accept;
  }
  st.p_succeed = wilson_estimate(total.success, c.trials);
  st.p_mostwin_given_succeed = wilson_estimate(total.most_win, total.success);
  st.mismatch_accept = wilson_estimate(total.mismatch_accept, total.mismatch);
  st.trials_effective = total.success;
  return st;
}

Verdict judge(const Estimate& e, double target, bool conditional) {
  if (!e.defined) return Verdict::inconclusive;
  if (conditional && e.samples < kMinConditionalSamples) return Verdict::inconclusive;
  if (e.ci_hi < target) return Verdict::violated;
  if (e.ci_lo < target && e.ci_hi - e.ci_lo > kMaxInconclusiveWidth) return Verdict::inconclusive;
  return Verdict::consistent;
}

}  // namespace

ProtocolStats run_checking(const ProtocolConfig& config, const RoundOutcomeModel& model) {
  if (config.variant != Variant::general) throw InputError("run_checking needs the general variant");
  return simulate(config, model, false);
}

ProtocolStats run_projection(const ProtocolConfig& config, const RoundOutcomeModel& model) {
  if (config.variant != Variant::projection) throw InputError("run_projection needs the projection variant");
  return simulate(config, model, true);
}

ProtocolStats run_protocol(const ProtocolConfig& config, const RoundOutcomeModel& model) {
  return config.variant == Variant::general ? run_checking(config, model)
                                            : run_projection(config, model);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "";
}

double required_v_log_gap(double epsilon, double t, std::size_t v, double kappa) {
  return double(v) * std::log1p(-epsilon / kappa) / std::log(2.0) + t - std::log2(epsilon / kappa);
}

GuaranteeReport guarantee_report(const ProtocolConfig& config, const RoundOutcomeModel& model,
                                 const ProtocolStats& stats) {
  validate_config(config);
  if (stats.variant != config.variant || stats.v_used != effective_v(config) ||
      stats.trials != config.trials || stats.threshold != most_win_threshold(config.n, config.epsilon)) {
    throw InputError("stats do not match config");
  }
  GuaranteeReport g;
  const double target = std::exp2(-config.t);
  g.p_win_all = model.win_all_probability(config.n);
  g.applicable = g.p_win_all >= target * (1 - 1e-12);
  g.analytic_log_gap = required_v_log_gap(config.epsilon, config.t, stats.v_used, 256.0);
  g.analytic_ok = g.analytic_log_gap <= 0.0;
  g.success = {"success", target, stats.p_succeed, Verdict::inconclusive, ""};
  g.most_win = {"most_win_given_success", 1 - config.epsilon / 256.0,
                stats.p_mostwin_given_succeed, Verdict::inconclusive, ""};
  if (!g.applicable) {
    g.success.verdict = g.most_win.verdict = g.overall = Verdict::not_applicable;
    g.notes.push_back("model wins all rounds with probability below 2^-t");
  } else {
    g.success.verdict = judge(stats.p_succeed, target, false);
    g.most_win.verdict = judge(stats.p_mostwin_given_succeed, g.most_win.target, true);
    if (g.most_win.verdict == Verdict::inconclusive && stats.trials_effective < kMinConditionalSamples) {
      g.most_win.note = "fewer than " + std::to_string(kMinConditionalSamples) + " successful trials";
    }
    const Verdict a = g.success.verdict, b = g.most_win.verdict;
    g.overall = a == Verdict::violated || b == Verdict::violated         ? Verdict::violated
                : a == Verdict::inconclusive || b == Verdict::inconclusive ? Verdict::inconclusive
                                                                         : Verdict::consistent;
  }
  if (config.variant == Variant::projection) {
    const double gap32 = required_v_log_gap(config.epsilon, config.t, stats.v_used, 32.0);
    std::ostringstream os;
    os.precision(6);
    os << "threshold uses eps/256 for both variants; at this v the scalar step holds with eps/32 "
       << (gap32 <= 0 ? "(log gap " : "only partially (log gap ") << gap32 << ")";
    g.notes.push_back(os.str());
    if (std::exp2(-config.t) > config.epsilon / 256.0) {
      g.notes.push_back(
          "hash collisions alone allow a conditional error up to 2^-t, which exceeds eps/256 "
          "unless t >= log2(256/eps)");
    }
  }
  if (!g.analytic_ok && config.variant == Variant::general) {
    g.notes.push_back("scalar bound (1-eps/256)^v 2^t <= eps/256 fails at this v");
  }
  return g;
}

ScalarBoundReport check_required_v_grid(Variant variant, double kappa) {
  ScalarBoundReport r;
  r.worst_log_gap = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 20; ++i) {
    const double eps = 0.05 * i;
    for (int t = 0; t <= 20; ++t) {
      const std::size_t v = required_v(eps, t, variant);
      const double gap = required_v_log_gap(eps, t, v, kappa);
      r.points.push_back({eps, double(t), v, gap});
      r.failures += gap > 0.0 ? 1 : 0;
      r.worst_log_gap = std::max(r.worst_log_gap, gap);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Serialization

Json estimate_to_json(const Estimate& e) {
  Json j;
  j["hits"] = e.hits;
  j["samples"] = e.samples;
  j["defined"] = e.defined;
  if (e.defined) {
    j["value"] = e.value;
    j["ci_lo"] = e.ci_lo;
    j["ci_hi"] = e.ci_hi;
  }
  return j;
}

Json stats_to_json(const ProtocolStats& s) {
  Json j;
  j["variant"] = to_string(s.variant);
  j["v_used"] = s.v_used;
  j["threshold"] = s.threshold;
  j["trials"] = s.trials;
  j["trials_effective"] = s.trials_effective;
  j["p_succeed"] = estimate_to_json(s.p_succeed);
  j["p_mostwin_given_succeed"] = estimate_to_json(s.p_mostwin_given_succeed);
  if (s.variant == Variant::projection) {
    j["hash_bits"] = s.hash_bits;
    j["answer_bits"] = s.answer_bits;
    j["mismatch_accept"] = estimate_to_json(s.mismatch_accept);
  }
  return j;
}

namespace {

Json item_to_json(const GuaranteeItem& it) {
  Json j;
  j["name"] = it.name;
  j["target"] = it.target;
  j["estimate"] = estimate_to_json(it.estimate);
  j["verdict"] = to_string(it.verdict);
  if (!it.note.empty()) j["note"] = it.note;
  return j;
}

template <typename T>
T field(const Json& doc, const char* name, T fallback) {
  if (!doc.contains(name)) return fallback;
  try {
    return doc.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("config.") + name + ": wrong type");
  }
}

double number(const Json& doc, const char* where, const char* name) {
  if (!doc.contains(name) || !doc.at(name).is_number()) {
    throw InputError(std::string(where) + "." + name + ": required number");
  }
  return doc.at(name).get<double>();
}

std::size_t count_field(const Json& doc, const char* where, const char* name) {
  if (!doc.at(name).is_number_unsigned()) {
    throw InputError(std::string(where) + "." + name + ": must be a nonnegative integer");
  }
  return doc.at(name).get<std::size_t>();
}

}  // namespace

Json guarantee_to_json(const GuaranteeReport& g) {
  Json j;
  j["p_win_all"] = g.p_win_all;
  j["applicable"] = g.applicable;
  j["analytic_log_gap"] = g.analytic_log_gap;
  j["analytic_ok"] = g.analytic_ok;
  j["items"] = Json::array({item_to_json(g.success), item_to_json(g.most_win)});
  j["verdict"] = to_string(g.overall);
  j["notes"] = g.notes;
  return j;
}

Json config_to_json(const ProtocolConfig& c) {
  Json j;
  j["variant"] = to_string(c.variant);
  j["n"] = c.n;
  j["epsilon"] = c.epsilon;
  j["t"] = c.t;
  if (c.v_override) j["v"] = *c.v_override;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  if (c.hash_bits) j["hash_bits"] = *c.hash_bits;
  if (c.answer_bits) j["answer_bits"] = *c.answer_bits;
  return j;
}

ProtocolConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("config: expected an object");
  ProtocolConfig c;
  c.variant = variant_from_string(field<std::string>(doc, "variant", "general"));
  for (const char* f : {"n", "trials"}) {
    if (!doc.contains(f)) throw InputError(std::string("config.") + f + ": required");
  }
  c.n = count_field(doc, "config", "n");
  c.trials = count_field(doc, "config", "trials");
  c.epsilon = number(doc, "config", "epsilon");
  c.t = doc.contains("t") ? number(doc, "config", "t") : 0.0;
  if (doc.contains("v")) c.v_override = count_field(doc, "config", "v");
  if (doc.contains("seed")) c.seed = count_field(doc, "config", "seed");
  if (doc.contains("hash_bits")) c.hash_bits = count_field(doc, "config", "hash_bits");
  if (doc.contains("answer_bits")) c.answer_bits = count_field(doc, "config", "answer_bits");
  validate_config(c);
  return c;
}

RoundOutcomeModel model_from_json(const Json& doc, std::size_t n) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw InputError("model.kind: required string");
  }
  const std::string kind = doc["kind"];
  if (kind == "iid_bernoulli") return RoundOutcomeModel::iid_bernoulli(number(doc, "model", "w"));
  if (kind == "win_all_or_partial") {
    return RoundOutcomeModel::win_all_or_partial(number(doc, "model", "q"), number(doc, "model", "f"));
  }
  if (kind != "strategy_backed") throw InputError("model.kind: unknown kind '" + kind + "'");
  if (!doc.contains("game")) throw InputError("model.game: required");
  const Game g = game_from_json(doc["game"]);
  const Json strat = doc.value("strategy", Json{{"type", "classical_optimal"}});
  const std::string type = strat.value("type", "");
  if (type == "classical_optimal") {
    return RoundOutcomeModel::strategy_backed(g, n, classical_value(repeat(g, n)).witness);
  }
  if (type == "classical") {
    ClassicalStrategy s;
    try {
      s.alice = strat.at("alice").get<std::vector<std::size_t>>();
      s.bob = strat.at("bob").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception&) {
      throw InputError("model.strategy: alice and bob must be arrays of answer indices");
    }
    return RoundOutcomeModel::strategy_backed(g, n, s);
  }
  if (type == "seesaw") {
    SeesawOptions opt;
    opt.d = strat.value("d", opt.d);
    opt.restarts = strat.value("restarts", opt.restarts);
    opt.iters = strat.value("iters", opt.iters);
    opt.seed = strat.value("seed", opt.seed);
    return RoundOutcomeModel::strategy_backed(g, n, entangled_value_seesaw(repeat(g, n), opt).strategy);
  }
  throw InputError("model.strategy.type: expected classical, classical_optimal or seesaw");
}

std::string stats_to_csv(const ProtocolConfig& c, const ProtocolStats& s, const GuaranteeReport& g) {
  std::ostringstream os;
  os.precision(17);
  os << "variant,n,epsilon,t,v,trials,p_succeed,ci_lo,ci_hi,p_cond,ci_lo,ci_hi,verdict\n";
  os << to_string(c.variant) << ',' << c.n << ',' << c.epsilon << ',' << c.t << ',' << s.v_used << ','
     << s.trials << ',' << s.p_succeed.value << ',' << s.p_succeed.ci_lo << ',' << s.p_succeed.ci_hi
     << ',';
  if (s.p_mostwin_given_succeed.defined) {
    os << s.p_mostwin_given_succeed.value << ',' << s.p_mostwin_given_succeed.ci_lo << ','
       << s.p_mostwin_given_succeed.ci_hi;
  } else {
    os << ",,";
  }
  os << ',' << to_string(g.overall) << '\n';
  return os.str();
}

}  // namespace nlg
