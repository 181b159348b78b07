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

// Monte-Carlo simulation of the sampling audit (Alice reveals inputs and
// outputs on v random coordinates, Bob checks the predicate there) and of
// its hashed variant for projection games, together with the v formulas
// and the guarantee verdicts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlg/games.hpp"
#include "nlg/json_io.hpp"
#include "nlg/random.hpp"

namespace nlg {

enum class Variant { general, projection };

std::string to_string(Variant v);
/// Throws InputError for anything but "general" or "projection".
Variant variant_from_string(const std::string& s);

/// ceil of 256/eps (t + log2(1/eps) + 8) for general and of
/// 32/eps (t + log2(1/eps) + 9) for projection. Throws InputError unless
/// eps is in (0, 1] and t >= 0.
std::size_t required_v(double epsilon, double t, Variant variant);

struct ProtocolConfig {
  std::size_t n = 1;
  double epsilon = 1.0;
  double t = 0.0;
  std::optional<std::size_t> v_override;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  Variant variant = Variant::general;
  /// Defaults to ceil(2t); at most 64.
  std::optional<std::size_t> hash_bits;
  /// Bits per revealed answer; defaults to ceil(log2 l) for strategy-backed
  /// models and to 1 otherwise.
  std::optional<std::size_t> answer_bits;
  unsigned jobs = 1;
};

/// Throws InputError on any out-of-range field.
void validate_config(const ProtocolConfig& c);
std::size_t effective_v(const ProtocolConfig& c);
std::size_t effective_hash_bits(const ProtocolConfig& c);
/// Threshold for "most rounds won": ceil((1 - eps/256) n) with 1e-9 slack.
std::size_t most_win_threshold(std::size_t n, double epsilon);

/// Per-round outcome model for the n-fold game.
class RoundOutcomeModel {
 public:
  enum class Kind { iid_bernoulli, win_all_or_partial, strategy_backed };

  static RoundOutcomeModel iid_bernoulli(double w);
  /// With probability q every round is won; otherwise exactly floor(f n)
  /// uniformly chosen rounds are won.
  static RoundOutcomeModel win_all_or_partial(double q, double f);
  /// Exact outcome distribution of a strategy for repeat(g, n).
  static RoundOutcomeModel strategy_backed(const Game& g, std::size_t n, const QuantumStrategy& s);
  static RoundOutcomeModel strategy_backed(const Game& g, std::size_t n, const ClassicalStrategy& s);

  Kind kind() const { return kind_; }
  double w() const { return w_; }
  double q() const { return q_; }
  double f() const { return f_; }
  /// Rounds of the strategy-backed model; 0 otherwise.
  std::size_t rounds() const { return rounds_; }
  std::size_t outputs() const { return outputs_; }
  bool projection_game() const { return projection_; }

  /// Pr[all n rounds won], exactly.
  double win_all_probability(std::size_t n) const;

  /// One joint outcome of the n rounds.
  struct Outcome {
    std::vector<std::uint8_t> won;
    /// Per-round XOR of Alice's answer and the unique winning answer given
    /// Bob's view; zero exactly on won rounds of a projection game.
    std::vector<std::uint32_t> diff;
  };
  /// `answer_bits` sizes the random nonzero symbols on lost rounds for the
  /// non-strategy models.
  void sample(std::size_t n, std::size_t answer_bits, Rng& rng, Outcome& out) const;

  Json to_json() const;

 private:
  Kind kind_ = Kind::iid_bernoulli;
  double w_ = 1.0;
  double q_ = 1.0;
  double f_ = 1.0;
  std::size_t rounds_ = 0;
  std::size_t outputs_ = 2;
  bool projection_ = false;
  std::string game_name_;
  // Strategy-backed tables, one entry per joint outcome with nonzero mass.
  std::vector<double> cdf_;
  std::vector<std::vector<std::uint8_t>> won_;
  std::vector<std::vector<std::uint32_t>> diff_;
};

/// Random linear map over GF(2) from in_bits to out_bits (<= 64) bits.
class Gf2LinearHash {
 public:
  /// rows[j] holds output bit j's coefficients, packed in 64-bit words.
  Gf2LinearHash(std::size_t in_bits, std::size_t out_bits,
                std::vector<std::vector<std::uint64_t>> rows);
  static Gf2LinearHash random(std::size_t in_bits, std::size_t out_bits, Rng& rng);

  std::size_t in_bits() const { return in_bits_; }
  std::size_t out_bits() const { return rows_.size(); }
  /// `x` is packed little-endian into ceil(in_bits / 64) words.
  std::uint64_t apply(std::span<const std::uint64_t> x) const;

 private:
  std::size_t in_bits_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

struct UniversalityReport {
  std::size_t max_width = 0;
  /// (input width, difference) pairs checked row by row.
  std::size_t row_cases = 0;
  /// Complete maps enumerated, over all (in, out) with in*out <= 16.
  std::size_t full_maps = 0;
  bool exact = true;
  double worst_deviation = 0.0;
};

/// Exhaustive check that Pr_h[h(d) = 0] = 2^-out for every nonzero d, for
/// input and output widths up to `max_width` (at most 12).
UniversalityReport verify_universality(std::size_t max_width = 12);

struct Estimate {
  std::size_t hits = 0;
  std::size_t samples = 0;
  bool defined = false;
  double value = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};

/// 99% two-sided Wilson interval; undefined for zero samples.
Estimate wilson_estimate(std::size_t hits, std::size_t samples);
inline constexpr double kWilsonZ99 = 2.5758293035489004;

struct ProtocolStats {
  Variant variant = Variant::general;
  Estimate p_succeed;
  /// Pr[#wins >= most_win_threshold | success]; undefined without successes.
  Estimate p_mostwin_given_succeed;
  /// Projection only: acceptance among trials whose revealed strings differ.
  Estimate mismatch_accept;
  std::size_t v_used = 0;
  std::size_t hash_bits = 0;
  std::size_t answer_bits = 0;
  std::size_t threshold = 0;
  std::size_t trials = 0;
  /// Successful trials, i.e. the conditional sample size.
  std::size_t trials_effective = 0;
};

ProtocolStats run_checking(const ProtocolConfig& config, const RoundOutcomeModel& model);
ProtocolStats run_projection(const ProtocolConfig& config, const RoundOutcomeModel& model);
/// Dispatches on config.variant.
ProtocolStats run_protocol(const ProtocolConfig& config, const RoundOutcomeModel& model);

enum class Verdict { consistent, violated, inconclusive, not_applicable };
std::string to_string(Verdict v);

struct GuaranteeItem {
  std::string name;
  double target = 0.0;
  Estimate estimate;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

struct GuaranteeReport {
  double p_win_all = 0.0;
  bool applicable = false;
  /// log2 of (1 - eps/256)^v 2^t minus log2(eps/256); <= 0 when the final
  /// scalar step of the argument holds.
  double analytic_log_gap = 0.0;
  bool analytic_ok = false;
  GuaranteeItem success;
  GuaranteeItem most_win;
  Verdict overall = Verdict::inconclusive;
  std::vector<std::string> notes;
};

/// Least successes before the conditional item may be called violated.
inline constexpr std::size_t kMinConditionalSamples = 100;
/// Intervals wider than this that straddle the target are inconclusive.
inline constexpr double kMaxInconclusiveWidth = 0.1;

/// Throws InputError when `stats` was not produced from `config`.
GuaranteeReport guarantee_report(const ProtocolConfig& config, const RoundOutcomeModel& model,
                                 const ProtocolStats& stats);

/// Scalar check of (1 - eps/kappa)^v 2^t <= eps/kappa at v = required_v.
struct ScalarBoundPoint {
  double epsilon;
  double t;
  std::size_t v;
  double log_gap;  // <= 0 when the inequality holds
};
struct ScalarBoundReport {
  std::vector<ScalarBoundPoint> points;
  std::size_t failures = 0;
  double worst_log_gap = 0.0;
};
double required_v_log_gap(double epsilon, double t, std::size_t v, double kappa);
/// Grid eps in {0.05, 0.10, ..., 1}, t in {0, ..., 20}.
ScalarBoundReport check_required_v_grid(Variant variant, double kappa);

Json estimate_to_json(const Estimate& e);
Json stats_to_json(const ProtocolStats& s);
Json guarantee_to_json(const GuaranteeReport& g);
Json config_to_json(const ProtocolConfig& c);
/// Parses a protocol config; the "model" object is read by model_from_json.
ProtocolConfig config_from_json(const Json& doc);
/// `n` sizes strategy-backed models. Strategy forms: {"type": "classical",
/// "alice": [...], "bob": [...]} over tuple indices, {"type":
/// "classical_optimal"} or {"type": "seesaw", "d", "restarts", "iters",
/// "seed"}.
RoundOutcomeModel model_from_json(const Json& doc, std::size_t n);
/// Columns: variant, n, epsilon, t, v, trials, p_succeed, ci_lo, ci_hi,
/// p_cond, ci_lo, ci_hi, verdict.
std::string stats_to_csv(const ProtocolConfig& c, const ProtocolStats& s, const GuaranteeReport& g);

}  // namespace nlg
