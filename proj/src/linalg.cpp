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

#include "nlg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiThreshold = 1e-14;

void check_dimension(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDimension || cols > kMaxDimension) {
    std::ostringstream msg;
    msg << "matrix dimension " << rows << "x" << cols << " exceeds the maximum of "
        << kMaxDimension;
    throw BudgetError(msg.str());
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError(std::string(what) + ": shape mismatch");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  check_dimension(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_dimension(rows, cols);
  if (data_.size() != rows * cols) {
    throw InputError("ComplexMatrix: entry count does not match rows x cols");
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InputError("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (Complex& z : m.data_) z = std::conj(z);
  return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
  std::vector<Complex> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw InputError("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: inner dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw InputError("matrix-vector product: dimension mismatch");
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InputError("inner product: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw InputError("RegisterLayout: dims and labels differ in length");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] == 0) throw InputError("RegisterLayout: zero dimension for " + labels_[i]);
    if (!seen.insert(labels_[i]).second) {
      throw InputError("RegisterLayout: duplicate label " + labels_[i]);
    }
  }
  check_dimension(total_dim(), 1);
}

RegisterLayout RegisterLayout::single(std::size_t dim, std::string label) {
  return RegisterLayout({dim}, {std::move(label)});
}

std::size_t RegisterLayout::total_dim() const {
  std::size_t d = 1;
  for (std::size_t x : dims_) {
    if (d > kMaxDimension) break;
    d *= x;
  }
  return d;
}

bool RegisterLayout::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t RegisterLayout::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown register label: " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

RegisterLayout RegisterLayout::select(std::span<const std::string> labels) const {
  for (const auto& l : labels) index_of(l);
  std::vector<std::size_t> dims;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (std::find(labels.begin(), labels.end(), labels_[i]) != labels.end()) {
      dims.push_back(dims_[i]);
      names.push_back(labels_[i]);
    }
  }
  return RegisterLayout(std::move(dims), std::move(names));
}

std::vector<std::string> RegisterLayout::complement(std::span<const std::string> labels) const {
  for (const auto& l : labels) index_of(l);
  std::vector<std::string> rest;
  for (const auto& l : labels_) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) rest.push_back(l);
  }
  return rest;
}

RegisterLayout RegisterLayout::reordered(std::span<const std::string> order) const {
  std::vector<std::size_t> dims;
  std::vector<std::string> names;
  for (const auto& l : order) {
    dims.push_back(dim_of(l));
    names.push_back(l);
  }
  return RegisterLayout(std::move(dims), std::move(names));
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
  auto dims = dims_;
  auto names = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  names.insert(names.end(), other.labels_.begin(), other.labels_.end());
  return RegisterLayout(std::move(dims), std::move(names));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(ComplexMatrix matrix, RegisterLayout layout,
                                 const Tolerances& tol)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (!matrix_.is_square()) throw InputError("density operator must be square");
  if (layout_.total_dim() != matrix_.rows()) {
    throw InputError("density operator: layout dimension does not match matrix");
  }
  if (!is_hermitian(matrix_, tol.herm)) throw InputError("density operator is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0)) > tol.trace) {
    std::ostringstream msg;
    msg << "density operator trace " << tr.real() << " differs from 1";
    throw InputError(msg.str());
  }
  if (min_eigenvalue(matrix_, tol) < -tol.psd) {
    throw InputError("density operator has a negative eigenvalue");
  }
}

DensityOperator DensityOperator::trusted(ComplexMatrix matrix, RegisterLayout layout) {
  DensityOperator rho;
  rho.matrix_ = std::move(matrix);
  rho.layout_ = std::move(layout);
  return rho;
}

DensityOperator DensityOperator::maximally_mixed(RegisterLayout layout) {
  const std::size_t d = layout.total_dim();
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= 1.0 / static_cast<double>(d);
  return trusted(std::move(m), std::move(layout));
}

// ---------------------------------------------------------------------------
// Tensor products

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (a.rows() != 0 && rows / a.rows() != b.rows()) throw BudgetError("kron: overflow");
  check_dimension(rows, cols);
  ComplexMatrix c(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return c;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
  check_dimension(a.size() * b.size(), 1);
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

DensityOperator kron(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::trusted(kron(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

// ---------------------------------------------------------------------------
// Eigendecomposition

bool is_hermitian(const ComplexMatrix& h, double tol) {
  if (!h.is_square()) return false;
  const double scale = std::max(1.0, h.max_abs());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = i; j < h.cols(); ++j) {
      if (std::abs(h(i, j) - std::conj(h(j, i))) > tol * scale) return false;
    }
  }
  return true;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h, const Tolerances& tol) {
  if (!h.is_square()) throw InputError("hermitian_eig: matrix is not square");
  if (!is_hermitian(h, tol.herm)) throw InputError("hermitian_eig: matrix is not Hermitian");
  const std::size_t n = h.rows();

  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  EigenDecomposition out;
  const double threshold = kJacobiThreshold * a.frobenius_norm();
  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    }
    if (std::sqrt(off) <= threshold) {
      converged = true;
      out.sweeps = sweep;
      break;
    }
    if (sweep == kMaxSweeps) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Phase D = diag(1, conj(phase)) makes the pivot real, then a real
        // rotation annihilates it. W = D * [[c, s], [-s, c]].
        const Complex phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex wqp = -s * std::conj(phase);
        const Complex wqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + wqp * akq;
          a(k, q) = s * akp + wqq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(wqp) * aqk;
          a(q, k) = s * apk + std::conj(wqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + wqp * vkq;
          v(k, q) = s * vkp + wqq * vkq;
        }
      }
    }
  }
  if (!converged) throw ConvergenceError("hermitian_eig: no convergence within 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& h, const Tolerances& tol) {
  auto e = hermitian_eig(h, tol);
  return e.values.empty() ? 0.0 : e.values.front();
}

double max_eigenvalue(const ComplexMatrix& h, const Tolerances& tol) {
  auto e = hermitian_eig(h, tol);
  return e.values.empty() ? 0.0 : e.values.back();
}

ComplexMatrix reconstruct(const EigenDecomposition& eig,
                          const std::function<double(double)>& f) {
  const std::size_t n = eig.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = fk * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f,
                                 const Tolerances& tol) {
  return reconstruct(hermitian_eig(h, tol), f);
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a, const Tolerances& tol) {
  auto eig = hermitian_eig(a, tol);
  if (eig.values.empty()) return a;
  if (eig.values.front() < -tol.psd) {
    throw InputError("matrix_sqrt_psd: eigenvalue below -tol_psd");
  }
  const double radius = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * radius;
  return reconstruct(eig, [noise](double x) { return x <= noise ? 0.0 : std::sqrt(x); });
}

double trace_norm(const ComplexMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw InputError("trace_norm: matrix is not square");
  const ComplexMatrix gram = a.adjoint() * a;
  auto eig = hermitian_eig(gram, tol);
  double total = 0.0;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    total += norm(a * std::span<const Complex>(eig.vectors.column(k)));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Partial trace and register permutation

namespace {

std::vector<std::size_t> offsets_of(const RegisterLayout& layout,
                                          const std::vector<std::size_t>& regs) {
  const auto& dims = layout.dims();
  std::vector<std::size_t> strides(dims.size());
  std::size_t stride = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = stride;
    stride *= dims[i];
  }
  std::vector<std::size_t> offsets{0};
  for (std::size_t r : regs) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[r]);
    for (std::size_t base : offsets) {
      for (std::size_t v = 0; v < dims[r]; ++v) next.push_back(base + v * strides[r]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<std::size_t> indices_of(const RegisterLayout& layout,
                                    std::span<const std::string> labels) {
  std::vector<std::size_t> idx;
  for (const auto& l : labels) idx.push_back(layout.index_of(l));
  return idx;
}

}  // namespace

std::vector<std::size_t> register_offsets(const RegisterLayout& layout,
                                          std::span<const std::string> labels) {
  return offsets_of(layout, indices_of(layout, labels));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                            std::span<const std::string> keep) {
  if (!m.is_square() || m.rows() != layout.total_dim()) {
    throw InputError("partial_trace: layout does not match matrix");
  }
  const RegisterLayout kept = layout.select(keep);
  std::vector<std::size_t> keep_regs = indices_of(layout, kept.labels());
  std::vector<std::size_t> trace_regs = indices_of(layout, layout.complement(keep));
  const auto keep_off = offsets_of(layout, keep_regs);
  const auto trace_off = offsets_of(layout, trace_regs);

  ComplexMatrix out(keep_off.size(), keep_off.size());
  for (std::size_t i = 0; i < keep_off.size(); ++i) {
    for (std::size_t j = 0; j < keep_off.size(); ++j) {
      Complex s = 0.0;
      for (std::size_t t : trace_off) s += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = s;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep) {
  RegisterLayout kept = rho.layout().select(keep);
  return DensityOperator::trusted(partial_trace(rho.matrix(), rho.layout(), keep),
                                  std::move(kept));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              std::initializer_list<std::string> keep) {
  std::vector<std::string> k(keep);
  return partial_trace(rho, std::span<const std::string>(k));
}

std::vector<std::size_t> permutation_map(const RegisterLayout& layout,
                                         std::span<const std::string> order) {
  if (order.size() != layout.size()) {
    throw InputError("permute_registers: order must list every register exactly once");
  }
  std::vector<std::size_t> regs = indices_of(layout, order);
  std::vector<std::size_t> sorted = regs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("permute_registers: repeated label");
  }
  return offsets_of(layout, regs);
}

ComplexMatrix permute_registers(const ComplexMatrix& m, const RegisterLayout& layout,
                                std::span<const std::string> order) {
  const auto map = permutation_map(layout, order);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) out(i, j) = m(map[i], map[j]);
  }
  return out;
}

DensityOperator permute_registers(const DensityOperator& rho,
                                  std::span<const std::string> order) {
  return DensityOperator::trusted(permute_registers(rho.matrix(), rho.layout(), order),
                                  rho.layout().reordered(order));
}

}  // namespace nlg
