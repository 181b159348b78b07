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

#include "nlg/inequality_suite.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "nlg/errors.hpp"
#include "nlg/parallel.hpp"
#include "nlg/quantum_info.hpp"
#include "nlg/random.hpp"

namespace nlg {
namespace {

// Reference states in relative-entropy checks get this spectral floor so
// their support is full.
constexpr double kSigmaFloor = 1e-8;

constexpr std::size_t kSingleDims[] = {2, 3, 4, 6, 8};
constexpr std::size_t kFactorDims[] = {2, 3, 4};
constexpr std::size_t kSmallFactorDims[] = {2, 3};

enum class Family { pure, mixed, classical };

template <std::size_t N>
std::size_t pick(const std::size_t (&values)[N], Rng& rng) {
  return values[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

std::size_t uniform_int(std::size_t lo, std::size_t hi, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(double lo, double hi, Rng& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Family draw_family(Rng& rng) { return static_cast<Family>(uniform_int(0, 2, rng)); }

DensityOperator sample_state(const RegisterLayout& layout, Family f, Rng& rng) {
  switch (f) {
    case Family::pure: return random_pure_state(layout, rng).density();
    case Family::mixed: return random_mixed_state(layout, uniform_int(2, layout.total_dim(), rng), rng);
    case Family::classical: break;
  }
  return random_classical_state(layout, rng);
}

// Mixture (1-w) base + w fresh with w log-uniform in [1e-4, 1], so chains of
// states probe both close and far pairs.
DensityOperator nearby(const DensityOperator& base, Family f, Rng& rng) {
  const double w = std::pow(10.0, uniform_real(-4.0, 0.0, rng));
  const auto fresh = sample_state(base.layout(), f, rng);
  ComplexMatrix m = Complex(1.0 - w) * base.matrix();
  m += Complex(w) * fresh.matrix();
  return DensityOperator::trusted(std::move(m), base.layout());
}

// Sequence of `count` states on one layout: independent draws or a chain of
// nearby states, each with probability one half.
std::vector<DensityOperator> state_sequence(const RegisterLayout& layout, std::size_t count,
                                            Rng& rng) {
  const Family f = draw_family(rng);
  const bool chain = uniform_int(0, 1, rng) == 1;
  std::vector<DensityOperator> out;
  out.push_back(sample_state(layout, f, rng));
  for (std::size_t i = 1; i < count; ++i) {
    out.push_back(chain ? nearby(out.back(), f, rng) : sample_state(layout, f, rng));
  }
  return out;
}

RegisterLayout single_layout(Rng& rng) { return RegisterLayout::single(pick(kSingleDims, rng)); }

RegisterLayout bipartite_layout(Rng& rng) {
  const std::size_t da = pick(kFactorDims, rng);
  const std::size_t db = pick(kFactorDims, rng);
  return RegisterLayout({da, db}, {"A", "B"});
}

void record_states(Witness* w, const std::vector<DensityOperator>& states) {
  if (!w) return;
  for (std::size_t i = 0; i < states.size(); ++i) {
    w->add("rho" + std::to_string(i + 1), states[i].matrix());
  }
}

using TrialFn = std::function<double(Rng&, Witness*)>;

double weak_triangle(Rng& rng, Witness* w) {
  const auto s = state_sequence(single_layout(rng), 3, rng);
  record_states(w, s);
  return 2 * fbar(s[0], s[1]) + 2 * fbar(s[1], s[2]) - fbar(s[0], s[2]);
}

double four_state(Rng& rng, Witness* w) {
  const auto s = state_sequence(single_layout(rng), 4, rng);
  record_states(w, s);
  return 3 * (fbar(s[0], s[1]) + fbar(s[1], s[2]) + fbar(s[2], s[3])) - fbar(s[0], s[3]);
}

// For any xi: F^2(rho, xi) + F^2(xi, sigma) <= 1 + F(rho, sigma).
double fidelity_sq_sum(Rng& rng, Witness* w) {
  const auto layout = single_layout(rng);
  const auto s = state_sequence(layout, 2, rng);
  std::vector<DensityOperator> all = s;
  if (uniform_int(0, 1, rng) == 1) {
    const double t = uniform_real(0.0, 1.0, rng);
    ComplexMatrix m = Complex(t) * s[0].matrix();
    m += Complex(1.0 - t) * s[1].matrix();
    all.push_back(DensityOperator::trusted(std::move(m), layout));
  } else {
    all.push_back(sample_state(layout, draw_family(rng), rng));
  }
  record_states(w, all);
  const double a = fidelity(s[0], all[2]);
  const double b = fidelity(all[2], s[1]);
  return 1 + fidelity(s[0], s[1]) - a * a - b * b;
}

DensityOperator cq_state(const std::vector<double>& p, const std::vector<DensityOperator>& cond) {
  const std::size_t k = p.size();
  const std::size_t d = cond.front().dim();
  ComplexMatrix m(k * d, k * d);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(x * d + i, x * d + j) = p[x] * cond[x].matrix()(i, j);
    }
  }
  return DensityOperator::trusted(std::move(m), RegisterLayout({k, d}, {"X", "S"}));
}

// Equality, so the margin is minus the absolute gap.
double cq_fidelity(Rng& rng, Witness* w) {
  const std::size_t k = uniform_int(2, 4, rng);
  const auto cond_layout = RegisterLayout::single(pick(kFactorDims, rng));
  const auto p = random_distribution(k, rng);
  const auto q = random_distribution(k, rng);
  std::vector<DensityOperator> a, b;
  double rhs = 0;
  for (std::size_t x = 0; x < k; ++x) {
    auto pair = state_sequence(cond_layout, 2, rng);
    rhs += std::sqrt(p[x] * q[x]) * fidelity(pair[0], pair[1]);
    a.push_back(pair[0]);
    b.push_back(pair[1]);
  }
  const auto rho = cq_state(p, a);
  const auto sigma = cq_state(q, b);
  record_states(w, {rho, sigma});
  return -std::abs(fidelity(rho, sigma) - rhs);
}

double povm_bound(Rng& rng, Witness* w) {
  const auto layout = single_layout(rng);
  const auto s = state_sequence(layout, 2, rng);
  const auto e = random_povm(layout.total_dim(), uniform_int(2, 2 * layout.total_dim(), rng), rng);
  record_states(w, s);
  if (w) {
    for (std::size_t i = 0; i < e.size(); ++i) w->add("E" + std::to_string(i + 1), e.elements()[i]);
  }
  return povm_outcome_bound(s[0], s[1], e) - fidelity(s[0], s[1]);
}

// Q is a partial trace or a computational-basis pinching.
double cptp_mono(Rng& rng, Witness* w) {
  const auto s = state_sequence(bipartite_layout(rng), 2, rng);
  record_states(w, s);
  const std::size_t channel = uniform_int(0, 4, rng);
  const std::vector<std::string> a{"A"}, b{"B"}, ab{"A", "B"};
  auto apply = [&](const DensityOperator& r) {
    switch (channel) {
      case 0: return partial_trace(r, a);
      case 1: return partial_trace(r, b);
      case 2: return pinch(r, a);
      case 3: return pinch(r, b);
      default: return pinch(r, ab);
    }
  };
  if (w) w->add("channel", static_cast<double>(channel));
  return fidelity(apply(s[0]), apply(s[1])) - fidelity(s[0], s[1]);
}

double subadd_cond(Rng& rng, Witness* w) {
  const RegisterLayout layout({pick(kSmallFactorDims, rng), pick(kSmallFactorDims, rng),
                               pick(kSmallFactorDims, rng)},
                              {"A", "B", "C"});
  const auto rho = sample_state(layout, draw_family(rng), rng);
  record_states(w, {rho});
  const std::vector<std::string> a{"A"}, b{"B"}, c{"C"}, ab{"A", "B"};
  return conditional_entropy(rho, a, c) + conditional_entropy(rho, b, c) -
         conditional_entropy(rho, ab, c);
}

double relent_vs_fid(Rng& rng, Witness* w) {
  const auto layout = single_layout(rng);
  auto s = state_sequence(layout, 2, rng);
  s[1] = floor_spectrum(s[1], kSigmaFloor);
  record_states(w, s);
  return relative_entropy(s[0], s[1]) - fbar(s[0], s[1]);
}

// Classical joint state against a product of classical references.
double superadd_classical(Rng& rng, Witness* w) {
  const std::size_t parts = uniform_int(2, 3, rng);
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < parts; ++i) {
    dims.push_back(parts == 2 ? pick(kFactorDims, rng) : pick(kSmallFactorDims, rng));
    labels.push_back("Z" + std::to_string(i + 1));
  }
  const RegisterLayout layout(dims, labels);
  const auto sigma = random_classical_state(layout, rng);
  double rhs = 0;
  std::vector<DensityOperator> refs;
  for (std::size_t i = 0; i < parts; ++i) {
    refs.push_back(floor_spectrum(random_classical_state(RegisterLayout({dims[i]}, {labels[i]}), rng),
                                  kSigmaFloor));
    const std::vector<std::string> keep{labels[i]};
    rhs += relative_entropy(partial_trace(sigma, keep), refs.back());
  }
  DensityOperator rho = refs.front();
  for (std::size_t i = 1; i < parts; ++i) rho = kron(rho, refs[i]);
  record_states(w, {sigma, rho});
  return relative_entropy(sigma, rho) - rhs;
}

double smax_ge_s(Rng& rng, Witness* w) {
  const auto layout = single_layout(rng);
  auto s = state_sequence(layout, 2, rng);
  s[1] = floor_spectrum(s[1], kSigmaFloor);
  record_states(w, s);
  return min_relative_entropy(s[0], s[1]) - relative_entropy(s[0], s[1]);
}

double mi_min_relent(Rng& rng, Witness* w) {
  const auto layout = bipartite_layout(rng);
  const auto rho = sample_state(layout, draw_family(rng), rng);
  const auto sx = floor_spectrum(sample_state(RegisterLayout({layout.dims()[0]}, {"A"}),
                                              draw_family(rng), rng),
                                 kSigmaFloor);
  const auto sy = floor_spectrum(sample_state(RegisterLayout({layout.dims()[1]}, {"B"}),
                                              draw_family(rng), rng),
                                 kSigmaFloor);
  record_states(w, {rho, sx, sy});
  const std::vector<std::string> a{"A"}, b{"B"};
  return relative_entropy(rho, kron(sx, sy)) - mutual_information(rho, a, b);
}

double relent_mono(Rng& rng, Witness* w) {
  auto s = state_sequence(bipartite_layout(rng), 2, rng);
  s[1] = floor_spectrum(s[1], kSigmaFloor);
  record_states(w, s);
  const std::vector<std::string> a{"A"};
  return relative_entropy(s[0], s[1]) -
         relative_entropy(partial_trace(s[0], a), partial_trace(s[1], a));
}

// Sampled with |A| >= |B|.
double cool_product(Rng& rng, Witness* w) {
  std::size_t da = pick(kFactorDims, rng);
  std::size_t db = pick(kFactorDims, rng);
  if (da < db) std::swap(da, db);
  const RegisterLayout layout({da, db}, {"A", "B"});
  const auto rho = sample_state(layout, draw_family(rng), rng);
  record_states(w, {rho});
  const std::vector<std::string> a{"A"}, b{"B"};
  ComplexMatrix gap = Complex(double(db * db)) *
                      kron(partial_trace(rho, a).matrix(), partial_trace(rho, b).matrix());
  gap -= rho.matrix();
  return min_eigenvalue(gap);
}

// Counting bound for nonnegative x with mean s: |{i : x_i <= C s}| >= n(1 - 1/C).
double fact_sum(Rng& rng, Witness* w) {
  const std::size_t n = uniform_int(1, 64, rng);
  const double c = 1.0 + std::pow(10.0, uniform_real(-3.0, 1.0, rng));
  std::vector<double> x(n);
  std::exponential_distribution<double> expo(1.0);
  const std::size_t shape = uniform_int(0, 2, rng);
  for (auto& v : x) {
    const double e = expo(rng);
    if (shape == 0) v = e;
    else if (shape == 1) v = e * e * e;  // heavy tail
    else v = uniform_int(0, 3, rng) == 0 ? e : 0.0;  // mostly zeros
  }
  double s = 0;
  for (double v : x) s += v;
  s /= double(n);
  std::size_t count = 0;
  for (double v : x) count += v <= c * s ? 1 : 0;
  if (w) {
    w->add("x", ComplexMatrix(1, n, std::vector<Complex>(x.begin(), x.end())));
    w->add("C", c);
    w->add("s", s);
  }
  return double(count) - double(n) * (1.0 - 1.0 / c);
}

struct Entry {
  std::string name;
  double tolerance;
  TrialFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"weak_triangle", 1e-9, weak_triangle},
      {"four_state", 1e-9, four_state},
      {"fidelity_sq_sum", 1e-9, fidelity_sq_sum},
      {"cq_fidelity", 1e-8, cq_fidelity},
      {"povm_bound", 1e-9, povm_bound},
      {"cptp_mono", 1e-9, cptp_mono},
      {"subadd_cond", 1e-9, subadd_cond},
      {"relent_vs_fid", 1e-7, relent_vs_fid},
      {"superadd_classical", 1e-7, superadd_classical},
      {"smax_ge_s", 1e-7, smax_ge_s},
      {"mi_min_relent", 1e-7, mi_min_relent},
      {"relent_mono", 1e-7, relent_mono},
      {"cool_product", 1e-9, cool_product},
      {"fact_sum", 1e-9, fact_sum},
  };
  return entries;
}

const Entry& lookup(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  throw InputError("unknown check '" + name + "'");
}

bool violates(double margin, double tol) { return !(margin >= -tol); }

std::string write_witness(const CheckSpec& spec, const CheckReport& r) {
  Witness w;
  const double margin = run_trial(spec.name, r.worst_case_seed, &w);
  Json doc;
  doc["check"] = spec.name;
  doc["trial"] = r.worst_trial;
  doc["trial_seed"] = r.worst_case_seed;
  doc["margin"] = margin;
  doc["tolerance"] = r.tolerance;
  Json states = Json::array();
  for (const auto& [label, m] : w.states) states.push_back(matrix_to_json(label, m));
  doc["states"] = std::move(states);
  Json scalars = Json::object();
  for (const auto& [label, v] : w.scalars) scalars[label] = v;
  doc["scalars"] = std::move(scalars);
  std::filesystem::create_directories(spec.witness_dir);
  const std::string path =
      (std::filesystem::path(spec.witness_dir) / (spec.name + "-witness.json")).string();
  write_text_file(path, dump_json(doc));
  return path;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

double default_tolerance(const std::string& name) { return lookup(name).tolerance; }

std::uint64_t trial_seed(const std::string& name, std::uint64_t seed, std::size_t trial) {
  return derive_seed(seed, fnv1a(name), trial);
}

double run_trial(const std::string& name, std::uint64_t seed, Witness* witness) {
  const auto& entry = lookup(name);
  Rng rng(seed);
  return entry.fn(rng, witness);
}

CheckReport run_check(const CheckSpec& spec) {
  const auto& entry = lookup(spec.name);
  if (spec.trials < 1) throw InputError("trials must be at least 1");
  if (spec.tolerance < 0) throw InputError("tolerance must be positive");
  CheckReport r;
  r.name = spec.name;
  r.tolerance = spec.tolerance > 0 ? spec.tolerance : entry.tolerance;
  std::vector<double> margins(spec.trials);
  parallel_for(spec.trials, spec.jobs, [&](std::size_t i) {
    Rng rng(trial_seed(spec.name, spec.seed, i));
    margins[i] = entry.fn(rng, nullptr);
  });
  r.trials_run = spec.trials;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const double m = margins[i];
    if (violates(m, r.tolerance)) ++r.violations;
    // NaN counts as the worst possible margin.
    const bool worse = std::isnan(m) ? !std::isnan(r.worst_margin) : m < r.worst_margin;
    if (worse) {
      r.worst_margin = m;
      r.worst_trial = i;
    }
  }
  r.worst_case_seed = trial_seed(spec.name, spec.seed, r.worst_trial);
  if (r.violations > 0 && !spec.witness_dir.empty()) r.witness_path = write_witness(spec, r);
  return r;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  // Iterative matcher with single-star backtracking.
  std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<CheckReport> run_all(std::uint64_t seed, std::size_t trials_per_check,
                                 const std::string& filter, unsigned jobs,
                                 const std::string& witness_dir) {
  std::vector<CheckReport> out;
  for (const auto& name : check_names()) {
    if (!filter.empty() && !glob_match(filter, name)) continue;
    CheckSpec spec;
    spec.name = name;
    spec.trials = trials_per_check;
    spec.seed = seed;
    spec.jobs = jobs;
    spec.witness_dir = witness_dir;
    out.push_back(run_check(spec));
  }
  if (out.empty()) throw InputError("filter '" + filter + "' matches no check");
  return out;
}

Json reports_to_json(const std::vector<CheckReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) {
    Json j;
    j["name"] = r.name;
    j["trials_run"] = r.trials_run;
    j["violations"] = r.violations;
    j["worst_margin"] = r.worst_margin;
    j["worst_trial"] = r.worst_trial;
    j["worst_case_seed"] = r.worst_case_seed;
    j["tolerance"] = r.tolerance;
    if (!r.witness_path.empty()) j["witness"] = std::filesystem::path(r.witness_path).filename().string();
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "name,trials,violations,worst_margin\n";
  for (const auto& r : reports) {
    os << r.name << ',' << r.trials_run << ',' << r.violations << ',' << r.worst_margin << '\n';
  }
  return os.str();
}

}  // namespace nlg
