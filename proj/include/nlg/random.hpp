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

// Seeding and random state families. Every random quantity in the library
// comes from an Rng seeded by derive_seed, so results depend only on the
// master seed and the (stream, index) coordinates, never on scheduling.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "nlg/linalg.hpp"
#include "nlg/quantum_info.hpp"

namespace nlg {

using Rng = std::mt19937_64;

/// One step of the splitmix64 generator; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for task `index` of stream `stream` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// 64-bit FNV-1a, used to turn names into stream ids.
std::uint64_t fnv1a(std::string_view text);

/// Normalized complex Gaussian vector (Haar on the unit sphere).
std::vector<Complex> haar_vector(std::size_t d, Rng& rng);

/// Haar unitary by Gram-Schmidt on Gaussian columns.
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);

PureState random_pure_state(const RegisterLayout& layout, Rng& rng);

/// Reduced state of a Haar pure state on layout x env.
DensityOperator random_mixed_state(const RegisterLayout& layout, std::size_t env_dim, Rng& rng);

/// Diagonal state with Dirichlet(1,...,1) weights.
DensityOperator random_classical_state(const RegisterLayout& layout, Rng& rng);

/// Probability vector with Dirichlet(1,...,1) weights.
std::vector<double> random_distribution(std::size_t n, Rng& rng);

/// m-outcome POVM: S^{-1/2} G_i S^{-1/2} for Wishart G_i.
Povm random_povm(std::size_t d, std::size_t m, Rng& rng);

/// (rho + f I) / (1 + d f): lifts every eigenvalue to at least about f.
DensityOperator floor_spectrum(const DensityOperator& rho, double f);

}  // namespace nlg
