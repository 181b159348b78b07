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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "nlg/errors.hpp"
#include "nlg/quantum_info.hpp"
#include "nlg/random.hpp"

namespace nlg {
namespace {

TEST(InequalitySuite, RegistryOrderAndTolerances) {
  const std::vector<std::string> expected{
      "weak_triangle", "four_state",     "fidelity_sq_sum", "cq_fidelity", "povm_bound",
      "cptp_mono",     "subadd_cond",    "relent_vs_fid",   "superadd_classical",
      "smax_ge_s",     "mi_min_relent",  "relent_mono",     "cool_product", "fact_sum"};
  EXPECT_EQ(check_names(), expected);
  EXPECT_EQ(default_tolerance("weak_triangle"), 1e-9);
  EXPECT_EQ(default_tolerance("smax_ge_s"), 1e-7);
  EXPECT_THROW(default_tolerance("nope"), InputError);
  CheckSpec bad;
  bad.name = "nope";
  EXPECT_THROW(run_check(bad), InputError);
  bad.name = "fact_sum";
  bad.trials = 0;
  EXPECT_THROW(run_check(bad), InputError);
}

TEST(InequalitySuite, GlobMatch) {
  EXPECT_TRUE(glob_match("*", "cool_product"));
  EXPECT_TRUE(glob_match("cool_product", "cool_product"));
  EXPECT_TRUE(glob_match("relent_*", "relent_mono"));
  EXPECT_TRUE(glob_match("*_mono", "cptp_mono"));
  EXPECT_TRUE(glob_match("f?ct_sum", "fact_sum"));
  EXPECT_FALSE(glob_match("relent_*", "smax_ge_s"));
  EXPECT_FALSE(glob_match("fact", "fact_sum"));
}

TEST(InequalitySuite, ScalarExampleRelentVersusFidelity) {
  const auto layout = RegisterLayout::single(2);
  const DensityOperator rho(ComplexMatrix::diagonal(std::vector<double>{0.75, 0.25}), layout);
  const DensityOperator sigma(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5}), layout);
  const double s = relative_entropy(rho, sigma);
  const double f = fidelity(rho, sigma);
  EXPECT_NEAR(s, 1 + 0.75 * std::log2(0.75) + 0.25 * std::log2(0.25), 1e-12);
  EXPECT_NEAR(s, 0.18872, 1e-5);
  EXPECT_NEAR(1 - f, 1 - (std::sqrt(0.375) + std::sqrt(0.125)), 1e-12);
  EXPECT_NEAR(1 - f, 0.03407, 1e-5);
}

TEST(InequalitySuite, CollapsedTriangleHasSlack) {
  const auto layout = RegisterLayout::single(3);
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_mixed_state(layout, 2, rng);
    const auto c = random_pure_state(layout, rng).density();
    const double margin = 2 * fbar(a, a) + 2 * fbar(a, c) - fbar(a, c);
    EXPECT_NEAR(margin, fbar(a, c), 1e-9);
    EXPECT_GE(margin, -1e-9);
  }
}

// Closed form: restricted to span{|00>,|11>}, 4 rhoA x rhoB - rho is the
// 2x2 matrix [[4a^2 - a, -sqrt(ab)], [-sqrt(ab), 4b^2 - b]].
double cool_product_min_eig(double a) {
  const double b = 1 - a;
  const double p = 4 * a * a - a, q = 4 * b * b - b, r = std::sqrt(a * b);
  const double lo = (p + q) / 2 - std::sqrt((p - q) * (p - q) / 4 + r * r);
  return std::min(lo, 4 * a * b);  // |01> and |10> carry 4ab
}

TEST(InequalitySuite, CoolProductBellAndCounterexample) {
  const std::vector<std::string> a{"A"}, b{"B"};
  const RegisterLayout layout({2, 2}, {"A", "B"});
  for (double w : {0.5, 0.6, 0.9, 0.99}) {
    const PureState phi({std::sqrt(w), 0, 0, std::sqrt(1 - w)}, layout);
    const auto rho = phi.density();
    ComplexMatrix gap = Complex(4.0) * kron(partial_trace(rho, a).matrix(),
                                            partial_trace(rho, b).matrix());
    gap -= rho.matrix();
    EXPECT_NEAR(min_eigenvalue(gap), cool_product_min_eig(w), 1e-10) << w;
  }
  EXPECT_NEAR(cool_product_min_eig(0.5), 0.0, 1e-15);
  EXPECT_LT(cool_product_min_eig(0.9), -0.09);
}

TEST(InequalitySuite, DeterministicAcrossRunsAndJobs) {
  CheckSpec spec;
  spec.name = "cptp_mono";
  spec.trials = 64;
  spec.seed = 11;
  const auto r1 = run_check(spec);
  spec.jobs = 3;
  const auto r2 = run_check(spec);
  EXPECT_EQ(dump_json(reports_to_json({r1})), dump_json(reports_to_json({r2})));
  EXPECT_EQ(run_trial(spec.name, r1.worst_case_seed), r1.worst_margin);
  EXPECT_EQ(r1.worst_case_seed, trial_seed("cptp_mono", 11, r1.worst_trial));
  spec.name = "weak_triangle";
  const auto w1 = run_check(spec);
  spec.seed = 12;
  EXPECT_NE(run_check(spec).worst_margin, w1.worst_margin);
}

TEST(InequalitySuite, SingleTrialRuns) {
  const auto reports = run_all(5, 1);
  ASSERT_EQ(reports.size(), 14u);
  for (const auto& r : reports) EXPECT_EQ(r.trials_run, 1u);
  EXPECT_EQ(dump_json(reports_to_json(reports)), dump_json(reports_to_json(run_all(5, 1))));
}

TEST(InequalitySuite, FilterSelectsChecks) {
  const auto one = run_all(1, 3, "cool_product");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].name, "cool_product");
  EXPECT_EQ(run_all(1, 3, "relent_*").size(), 2u);
  EXPECT_THROW(run_all(1, 3, "zzz*"), InputError);
}

class SoundCheck : public ::testing::TestWithParam<std::string> {};

TEST_P(SoundCheck, NoViolationsOnModestSample) {
  CheckSpec spec;
  spec.name = GetParam();
  spec.trials = 400;
  spec.seed = 2026;
  const auto r = run_check(spec);
  EXPECT_EQ(r.violations, 0u) << r.name << " worst " << r.worst_margin << " at trial "
                              << r.worst_trial;
  EXPECT_GE(r.worst_margin, -r.tolerance);
}

INSTANTIATE_TEST_SUITE_P(Registry, SoundCheck,
                         ::testing::Values("weak_triangle", "four_state", "fidelity_sq_sum",
                                           "cq_fidelity", "povm_bound", "cptp_mono", "subadd_cond",
                                           "relent_vs_fid", "superadd_classical", "smax_ge_s",
                                           "mi_min_relent", "relent_mono", "fact_sum"));

TEST(InequalitySuite, CoolProductViolationDumpsWitness) {
  const auto dir = std::filesystem::temp_directory_path() / "nlg_witness_test";
  std::filesystem::remove_all(dir);
  CheckSpec spec;
  spec.name = "cool_product";
  spec.trials = 200;
  spec.seed = 3;
  spec.witness_dir = dir.string();
  const auto r = run_check(spec);
  EXPECT_GT(r.violations, 0u);
  ASSERT_FALSE(r.witness_path.empty());
  const auto doc = read_json_file(r.witness_path);
  EXPECT_EQ(doc["check"], "cool_product");
  EXPECT_EQ(doc["margin"].get<double>(), r.worst_margin);
  const auto rho = matrix_from_json(doc["states"][0]);
  EXPECT_EQ(rho.rows(), rho.cols());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nlg
