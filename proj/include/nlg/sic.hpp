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

// Superposed states |Omega> = sum_xy sqrt(p_xy) |x>_X |phi_xy>_AB |y>_Y, their
// information cost, the local decoupling isometries and the scalar bounds
// that go with them.

#include <vector>

#include "nlg/games.hpp"
#include "nlg/quantum_info.hpp"
#include "nlg/random.hpp"

namespace nlg {

struct SuperposedState {
  std::size_t k = 0;
  std::vector<double> p;  // k x k row-major
  AdviceEnsemble advice;
  PureState realized;     // registers X, A, B, Y
};

/// Throws InputError unless p is a k x k distribution and the advice has
/// one normalized state per (x, y).
SuperposedState make_superposed_state(std::size_t k, std::vector<double> p,
                                      AdviceEnsemble advice);

struct SicTerms {
  double i_x_by = 0.0;  // I(X:BY) with X measured
  double i_y_xa = 0.0;  // I(Y:XA) with Y measured
  double total() const { return i_x_by + i_y_xa; }
};

SicTerms sic_objective(const SuperposedState& omega);

struct DecouplingResult {
  std::vector<ComplexMatrix> isometries_alice;  // x -> (k dA) x dA, A -> A' = (X, A)
  std::vector<ComplexMatrix> isometries_bob;    // y -> (dB k) x dB, B -> B' = (B, Y)
  double delta_alice = 0.0;  // I(X:BY) of the input
  double delta_bob = 0.0;    // I(Y:XA) of the input
  double delta = 0.0;        // max of the two
  double fbar_alice = 0.0;   // Fbar(Omega1, Omega1^X x Omega1^{A'BY})
  double fbar_bob = 0.0;     // Fbar(Omega2, Omega2^{XAB'} x Omega2^Y)
  double fbar_out = 0.0;     // Fbar(Omega3, Omega3^{XY} x Omega3^{A'B'})
  double fbar_x_rest = 0.0;  // Fbar(Omega3, Omega3^X x Omega3^{A'B'Y})
  PureState omega3;          // registers X, A', B', Y

  bool alice_within_bound() const { return fbar_alice <= 9 * delta_alice + 1e-6; }
  bool bob_within_bound() const { return fbar_bob <= 9 * delta_bob + 1e-6; }
  bool combined_within_bound() const { return fbar_out <= 81 * delta + 1e-6; }
};

/// Builds U_x from Uhlmann's theorem between the conditional state of BY
/// given x (purified by A) and the average state (purified by XA), then V_y
/// symmetrically. Throws InputError when p is not a product distribution.
DecouplingResult build_decoupling(const SuperposedState& omega);

/// Random family phi_xy = normalize(phi_0 + eta g_xy) with Gaussian g_xy and
/// eta log-uniform in [1e-3, 1]; p uniform.
SuperposedState random_superposed_state(std::size_t k, std::size_t dim_a, std::size_t dim_b,
                                        Rng& rng);

/// (1/81)(1 - sqrt((1-eps)(1-delta)) - sqrt(delta eps)); inputs in [0, 1].
double sic_lower_bound(double epsilon, double delta);

struct ScalarGridReport {
  std::size_t points = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  // min over the grid of (lhs - rhs)
  double worst_at = 0.0;
  double fail_lo = 0.0;       // smallest failing argument (if any)
  double fail_hi = 0.0;       // largest failing argument (if any)
};

/// sic_lower_bound(eps, 0) >= eps / 162 on eps = i / (points - 1).
ScalarGridReport check_sic_general_case(std::size_t points);
/// sic_lower_bound(eps, eps / 8) against eps / 324. Findings, not contract.
ScalarGridReport check_sic_eighth_case(std::size_t points);
/// sic_lower_bound(eps / 4, eps / 32) against eps / 1296. Findings only.
ScalarGridReport check_sic_shifted_case(std::size_t points);
/// 9 (1 - cos(a / 3)) - (1 - cos a) >= 0 on a in [0, pi].
ScalarGridReport check_angle_thirds(std::size_t points);

struct ShiftCheckReport {
  double epsilon = 0.0;
  std::size_t grid_points = 0;
  std::size_t violations = 0;   // grid points with g <= eps/8 and w > 1 - eps/4
  double root = 0.0;            // largest w in [1-eps, 1] with g(w) <= eps/8
  double margin = 0.0;          // (1 - eps/4) - root
  double g_at_bound = 0.0;      // g(1 - eps/4)
};

/// g(w) = 1 - sqrt(w (1-eps)) - sqrt((1-w) eps).
double game_shift_distance(double omega, double epsilon);

/// Checks that g(w) <= eps/8 forces w <= 1 - eps/4 on a uniform grid of
/// w in [0, 1] and locates the root on the branch w >= 1 - eps by bisection.
ShiftCheckReport rel_ent_game_shift_check(double epsilon, std::size_t grid_points);

}  // namespace nlg
