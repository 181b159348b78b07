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

// Dense complex linear algebra for small quantum systems: matrices, register
// layouts, Hermitian eigendecomposition (cyclic Jacobi), tensor products and
// partial traces. Register order in a layout is authoritative: the first
// register is the most significant digit of a basis index, matching the
// standard Kronecker ordering.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nlg {

using Complex = std::complex<double>;

/// Validation tolerances shared by every layer.
struct Tolerances {
  double herm = 1e-9;
  double trace = 1e-9;
  double psd = 1e-9;
  double eig = 1e-11;
};

/// Largest row/column count any operation will produce.
inline constexpr std::size_t kMaxDimension = 4096;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws InputError on a length mismatch or a
  /// non-finite entry.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  /// |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  std::vector<Complex> column(std::size_t c) const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// <a|b>, conjugating the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

/// Ordered tensor factors with unique labels, e.g. {X:2, A:2, B:2, Y:2}.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout(std::vector<std::size_t> dims, std::vector<std::string> labels);
  static RegisterLayout single(std::size_t dim, std::string label = "S");

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t total_dim() const;

  bool contains(const std::string& label) const;
  /// Throws InputError for an unknown label.
  std::size_t index_of(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const { return dims_[index_of(label)]; }

  /// Sub-layout of the given labels, kept in this layout's order.
  RegisterLayout select(std::span<const std::string> labels) const;
  /// Labels of this layout that are not in `labels`, in layout order.
  std::vector<std::string> complement(std::span<const std::string> labels) const;
  /// Sub-layout in exactly the order given.
  RegisterLayout reordered(std::span<const std::string> order) const;
  RegisterLayout concat(const RegisterLayout& other) const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
};

/// Hermitian, PSD, unit-trace operator annotated with a layout.
class DensityOperator {
 public:
  /// Validates shape, hermiticity, trace and eigenvalues against `tol`.
  DensityOperator(ComplexMatrix matrix, RegisterLayout layout, const Tolerances& tol = {});
  /// Skips the eigenvalue check; used for results of trace-preserving
  /// operations on already-validated states.
  static DensityOperator trusted(ComplexMatrix matrix, RegisterLayout layout);
  static DensityOperator maximally_mixed(RegisterLayout layout);

  const ComplexMatrix& matrix() const { return matrix_; }
  const RegisterLayout& layout() const { return layout_; }
  std::size_t dim() const { return matrix_.rows(); }

 private:
  DensityOperator() = default;
  ComplexMatrix matrix_;
  RegisterLayout layout_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);
/// Tensor product with concatenated layouts; labels must stay unique.
DensityOperator kron(const DensityOperator& a, const DensityOperator& b);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Throws InputError for non-Hermitian input and
/// ConvergenceError after 100 sweeps.
EigenDecomposition hermitian_eig(const ComplexMatrix& h, const Tolerances& tol = {});

bool is_hermitian(const ComplexMatrix& h, double tol);
double min_eigenvalue(const ComplexMatrix& h, const Tolerances& tol = {});
double max_eigenvalue(const ComplexMatrix& h, const Tolerances& tol = {});

/// U f(Λ) U† for Hermitian h.
ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f,
                                 const Tolerances& tol = {});
ComplexMatrix reconstruct(const EigenDecomposition& eig,
                          const std::function<double(double)>& f);

/// Eigenvalues below -tol.psd are rejected; the rest are clamped at zero and
/// eigenvalues at rounding level relative to the spectral radius are treated
/// as exact zeros before the root.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a, const Tolerances& tol = {});

/// Sum of singular values. Each singular value is recovered as |a v_i| over
/// the eigenvectors v_i of a†a, which keeps small singular values accurate
/// to rounding level instead of to its square root.
double trace_norm(const ComplexMatrix& a, const Tolerances& tol = {});

/// Partial trace of an operator laid out as `layout`, keeping `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                            std::span<const std::string> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              std::initializer_list<std::string> keep);

/// Offsets into the full basis of every multi-index over `labels` (taken in
/// the order given). Adding a complementary offset addresses one entry.
std::vector<std::size_t> register_offsets(const RegisterLayout& layout,
                                          std::span<const std::string> labels);

/// Basis-index map for moving registers into `order` (a permutation of the
/// layout's labels): new index j corresponds to old index map[j].
std::vector<std::size_t> permutation_map(const RegisterLayout& layout,
                                         std::span<const std::string> order);
ComplexMatrix permute_registers(const ComplexMatrix& m, const RegisterLayout& layout,
                                std::span<const std::string> order);
DensityOperator permute_registers(const DensityOperator& rho,
                                  std::span<const std::string> order);

}  // namespace nlg
