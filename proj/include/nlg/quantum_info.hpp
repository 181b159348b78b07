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

// Fidelity, entropies, purifications and Uhlmann isometries. Entropies are
// in bits.

#include <string>
#include <vector>

#include "nlg/linalg.hpp"

namespace nlg {

/// Unit vector annotated with a register layout.
class PureState {
 public:
  PureState() = default;
  PureState(std::vector<Complex> amplitudes, RegisterLayout layout, double tol = 1e-9);
  /// Normalizes `amplitudes`; throws InputError for the zero vector.
  static PureState normalized(std::vector<Complex> amplitudes, RegisterLayout layout);

  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  const RegisterLayout& layout() const { return layout_; }
  std::size_t dim() const { return amplitudes_.size(); }

  DensityOperator density() const;

 private:
  std::vector<Complex> amplitudes_;
  RegisterLayout layout_;
};

/// Positive operators summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements, double tol = 1e-9);
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<ComplexMatrix> elements_;
};

/// Reduced state of a pure state; cheaper than forming the full projector.
DensityOperator reduced_state(const PureState& psi, std::span<const std::string> keep);
DensityOperator reduced_state(const PureState& psi, std::initializer_list<std::string> keep);

/// Same-layout vector with registers moved into `order`.
PureState permute_registers(const PureState& psi, std::span<const std::string> order);

double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
/// sqrt(<psi|sigma|psi>)
double fidelity(const PureState& psi, const DensityOperator& sigma);
double fidelity(const PureState& psi, const PureState& phi);
inline double fbar(const DensityOperator& rho, const DensityOperator& sigma) {
  return 1.0 - fidelity(rho, sigma);
}
double angle(const DensityOperator& rho, const DensityOperator& sigma);

/// F between psi and the product of its marginals on `groups`, which must
/// partition the layout. Used for the decoupling distances.
double fidelity_to_product(const PureState& psi,
                           const std::vector<std::vector<std::string>>& groups);

/// Sum over outcomes of sqrt(Tr(rho E_i) Tr(sigma E_i)).
double povm_outcome_bound(const DensityOperator& rho, const DensityOperator& sigma,
                          const Povm& e);

/// Purification on (ancilla, system...) with ancilla dimension equal to the
/// system dimension; Schmidt terms ordered by descending eigenvalue.
PureState purify(const DensityOperator& rho, const std::string& ancilla_label = "R");

/// Isometry W from the source ancilla to the target ancilla maximizing
/// Re <target|(W x I)|source>. Both states are given as ancilla-by-system
/// matrices with a common system dimension; requires
/// target.rows() >= source.rows().
ComplexMatrix uhlmann_isometry(const ComplexMatrix& source, const ComplexMatrix& target);

/// Purification of sigma in phi's layout with <phi|psi> = F(rho, sigma).
/// phi must purify rho (within 1e-8); the registers of phi that are not in
/// rho's layout form the ancilla.
PureState uhlmann_partner(const DensityOperator& rho, const DensityOperator& sigma,
                          const PureState& phi);

double entropy_of_spectrum(std::span<const double> eigenvalues);
double von_neumann_entropy(const DensityOperator& rho);
/// S(a c) - S(c)
double conditional_entropy(const DensityOperator& rho, std::span<const std::string> a,
                           std::span<const std::string> c);
/// S(x) + S(y) - S(x y)
double mutual_information(const DensityOperator& rho, std::span<const std::string> x,
                          std::span<const std::string> y);

/// Eigenvalues above this count as support for the infinity decisions.
inline constexpr double kSupportCutoff = 1e-10;

/// Returns +infinity when the support of rho is not inside that of sigma.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);
/// log2 of the least 2^k with rho <= 2^k sigma, or +infinity.
double min_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// Dephases `regs` in the computational basis.
DensityOperator measure_register(const PureState& psi, std::span<const std::string> regs);
DensityOperator pinch(const DensityOperator& rho, std::span<const std::string> regs);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, all > 1e-12
  ComplexMatrix left;                // columns: orthonormal vectors on the cut
  ComplexMatrix right;               // columns: orthonormal vectors on the rest
  RegisterLayout left_layout;
  RegisterLayout right_layout;
};

/// `cut` (in layout order) against the remaining registers; both sides must
/// be nonempty.
SchmidtDecomposition schmidt_decompose(const PureState& psi, std::span<const std::string> cut);

}  // namespace nlg
