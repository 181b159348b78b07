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

#include "nlg/random.hpp"

#include <cmath>

#include "nlg/errors.hpp"

namespace nlg {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ stream;
  h = splitmix64(s);
  s = h ^ index;
  return splitmix64(s);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

std::vector<Complex> haar_vector(std::size_t d, Rng& rng) {
  std::vector<Complex> v(d);
  double n = 0.0;
  while (!(n > 1e-150)) {
    for (Complex& z : v) z = gaussian(rng);
    n = norm(v);
  }
  for (Complex& z : v) z /= n;
  return v;
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix u(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<Complex> v;
    double n = 0.0;
    while (!(n > 1e-8)) {
      v = haar_vector(d, rng);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = 0; p < c; ++p) {
          Complex dot = 0.0;
          for (std::size_t r = 0; r < d; ++r) dot += std::conj(u(r, p)) * v[r];
          for (std::size_t r = 0; r < d; ++r) v[r] -= dot * u(r, p);
        }
      }
      n = norm(v);
    }
    for (std::size_t r = 0; r < d; ++r) u(r, c) = v[r] / n;
  }
  return u;
}

PureState random_pure_state(const RegisterLayout& layout, Rng& rng) {
  return PureState::normalized(haar_vector(layout.total_dim(), rng), layout);
}

DensityOperator random_mixed_state(const RegisterLayout& layout, std::size_t env_dim, Rng& rng) {
  if (env_dim == 0) throw InputError("random_mixed_state: zero environment dimension");
  const std::size_t d = layout.total_dim();
  const auto v = haar_vector(d * env_dim, rng);
  ComplexMatrix rho(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Complex s = 0.0;
      for (std::size_t e = 0; e < env_dim; ++e) s += v[i * env_dim + e] * std::conj(v[j * env_dim + e]);
      rho(i, j) = s;
      rho(j, i) = std::conj(s);
    }
  }
  return DensityOperator::trusted(std::move(rho), layout);
}

std::vector<double> random_distribution(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  while (!(total > 0.0)) {
    total = 0.0;
    for (double& x : p) {
      x = e(rng);
      total += x;
    }
  }
  for (double& x : p) x /= total;
  return p;
}

DensityOperator random_classical_state(const RegisterLayout& layout, Rng& rng) {
  const auto p = random_distribution(layout.total_dim(), rng);
  return DensityOperator::trusted(ComplexMatrix::diagonal(std::span<const double>(p)), layout);
}

Povm random_povm(std::size_t d, std::size_t m, Rng& rng) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix total(d, d);
  for (std::size_t i = 0; i < m; ++i) {
    ComplexMatrix a(d, d);
    for (Complex& z : a.entries()) z = gaussian(rng);
    ComplexMatrix gi = a * a.adjoint();
    total += gi;
    g.push_back(std::move(gi));
  }
  const ComplexMatrix s = hermitian_function(total, [](double x) { return 1.0 / std::sqrt(x); });
  for (auto& gi : g) {
    ComplexMatrix e = s * gi * s;
    for (std::size_t r = 0; r < d; ++r) {
      e(r, r) = e(r, r).real();
      for (std::size_t c = r + 1; c < d; ++c) {
        const Complex z = 0.5 * (e(r, c) + std::conj(e(c, r)));
        e(r, c) = z;
        e(c, r) = std::conj(z);
      }
    }
    gi = std::move(e);
  }
  return Povm(std::move(g), 1e-8);
}

DensityOperator floor_spectrum(const DensityOperator& rho, double f) {
  const std::size_t d = rho.dim();
  ComplexMatrix m = rho.matrix();
  for (std::size_t i = 0; i < d; ++i) m(i, i) += f;
  m *= 1.0 / (1.0 + static_cast<double>(d) * f);
  return DensityOperator::trusted(std::move(m), rho.layout());
}

}  // namespace nlg
