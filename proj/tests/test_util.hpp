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

#include <complex>
#include <random>

#include "nlg/linalg.hpp"

namespace nlg::testing {

inline ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) {
    const double re = n(rng);
    z = Complex(re, n(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  ComplexMatrix g = gaussian_matrix(d, d, rng);
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

inline ComplexMatrix random_psd(std::size_t d, std::size_t rank, std::mt19937_64& rng) {
  ComplexMatrix g = gaussian_matrix(d, rank, rng);
  return g * g.adjoint();
}

inline ComplexMatrix random_density(std::size_t d, std::mt19937_64& rng) {
  ComplexMatrix p = random_psd(d, d, rng);
  p *= 1.0 / p.trace().real();
  return p;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

}  // namespace nlg::testing
