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

// Registry of named, seeded property checks over random states. Each trial
// yields a margin (right side minus left side of the inequality); a trial is
// a violation only when its margin falls below -tolerance.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nlg/json_io.hpp"
#include "nlg/linalg.hpp"

namespace nlg {

struct CheckSpec {
  std::string name;
  std::size_t trials = 10000;
  /// Zero selects the registered default for the check.
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  /// When non-empty, the worst violating trial is replayed and its states are
  /// written to `<witness_dir>/<name>-witness.json`.
  std::string witness_dir;
};

struct CheckReport {
  std::string name;
  std::size_t trials_run = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  std::size_t worst_trial = 0;
  std::uint64_t worst_case_seed = 0;
  double tolerance = 0.0;
  std::string witness_path;
};

/// One trial's states, captured when replaying a trial.
struct Witness {
  std::vector<std::pair<std::string, ComplexMatrix>> states;
  std::vector<std::pair<std::string, double>> scalars;
  void add(const std::string& label, const ComplexMatrix& m) { states.emplace_back(label, m); }
  void add(const std::string& label, double v) { scalars.emplace_back(label, v); }
};

/// Registered names in registry order.
const std::vector<std::string>& check_names();
/// Throws InputError for an unknown name.
double default_tolerance(const std::string& name);
/// Seed of one trial: derive_seed(seed, fnv1a(name), trial).
std::uint64_t trial_seed(const std::string& name, std::uint64_t seed, std::size_t trial);
/// Margin of a single trial; fills `witness` when non-null.
double run_trial(const std::string& name, std::uint64_t trial_seed, Witness* witness = nullptr);

CheckReport run_check(const CheckSpec& spec);

/// Shell-style match supporting '*' and '?'.
bool glob_match(const std::string& pattern, const std::string& text);

/// Runs every registered check whose name matches `filter` (empty = all).
std::vector<CheckReport> run_all(std::uint64_t seed, std::size_t trials_per_check,
                                 const std::string& filter = "", unsigned jobs = 1,
                                 const std::string& witness_dir = "");

Json reports_to_json(const std::vector<CheckReport>& reports);
/// Columns: name, trials, violations, worst_margin.
std::string reports_to_csv(const std::vector<CheckReport>& reports);

}  // namespace nlg
