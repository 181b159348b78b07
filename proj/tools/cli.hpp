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

// Command-line front end. Every command resolves its options into a JSON
// config, runs, and writes manifest.json, report.json and (where tabular)
// report.csv under <out>/<command>/<timestamp>-<seed>/. report.json depends
// only on the config, so `rerun` on a manifest reproduces it byte for byte.

#include <iosfwd>
#include <string>
#include <vector>

namespace nlg::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes: 0 success, 1 property violation, 2 input error, 3 budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlg::cli
