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

#include "nlg/quantum_info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

constexpr double kEntropyCutoff = 1e-12;
constexpr double kSchmidtCutoff = 1e-12;

void require_same_dim(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw InputError("states have different dimensions");
}

void require_disjoint(std::span<const std::string> a, std::span<const std::string> b) {
  for (const auto& l : a) {
    if (std::find(b.begin(), b.end(), l) != b.end()) {
      throw InputError("register sets overlap on " + l);
    }
  }
}

std::vector<std::string> join(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::string> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Row r of the result holds the amplitudes with `rows` fixed to multi-index r.
ComplexMatrix reshape(const PureState& psi, std::span<const std::string> rows) {
  const auto& layout = psi.layout();
  const auto row_off = register_offsets(layout, rows);
  const auto rest = layout.complement(rows);
  const auto col_off = register_offsets(layout, rest);
  ComplexMatrix m(row_off.size(), col_off.size());
  for (std::size_t r = 0; r < row_off.size(); ++r) {
    for (std::size_t c = 0; c < col_off.size(); ++c) {
      m(r, c) = psi.amplitudes()[row_off[r] + col_off[c]];
    }
  }
  return m;
}

double clamp_unit(double f) { return std::clamp(f, 0.0, 1.0); }

}  // namespace

// ---------------------------------------------------------------------------

PureState::PureState(std::vector<Complex> amplitudes, RegisterLayout layout, double tol)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (amplitudes_.size() != layout_.total_dim()) {
    throw InputError("pure state: layout dimension does not match amplitude count");
  }
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InputError("pure state: non-finite amplitude");
    }
  }
  if (std::abs(norm(amplitudes_) - 1.0) > tol) throw InputError("pure state is not normalized");
}

PureState PureState::normalized(std::vector<Complex> amplitudes, RegisterLayout layout) {
  const double n = norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError("cannot normalize a zero vector");
  for (Complex& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes), std::move(layout));
}

DensityOperator PureState::density() const {
  return DensityOperator::trusted(ComplexMatrix::outer(amplitudes_, amplitudes_), layout_);
}

Povm::Povm(std::vector<ComplexMatrix> elements, double tol) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InputError("POVM has no elements");
  const std::size_t d = elements_.front().rows();
  ComplexMatrix total(d, d);
  Tolerances t;
  t.herm = tol;
  for (const auto& e : elements_) {
    if (!e.is_square() || e.rows() != d) throw InputError("POVM elements differ in shape");
    if (!is_hermitian(e, tol)) throw InputError("POVM element is not Hermitian");
    if (min_eigenvalue(e, t) < -tol) throw InputError("POVM element is not positive");
    total += e;
  }
  if ((total - ComplexMatrix::identity(d)).max_abs() > tol) {
    throw InputError("POVM elements do not sum to the identity");
  }
}

DensityOperator reduced_state(const PureState& psi, std::span<const std::string> keep) {
  RegisterLayout kept = psi.layout().select(keep);
  const auto keep_off = register_offsets(psi.layout(), kept.labels());
  const auto trace_off = register_offsets(psi.layout(), psi.layout().complement(keep));
  const auto& a = psi.amplitudes();
  ComplexMatrix out(keep_off.size(), keep_off.size());
  for (std::size_t i = 0; i < keep_off.size(); ++i) {
    for (std::size_t j = i; j < keep_off.size(); ++j) {
      Complex s = 0.0;
      for (std::size_t t : trace_off) s += a[keep_off[i] + t] * std::conj(a[keep_off[j] + t]);
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  }
  return DensityOperator::trusted(std::move(out), std::move(kept));
}

DensityOperator reduced_state(const PureState& psi, std::initializer_list<std::string> keep) {
  std::vector<std::string> k(keep);
  return reduced_state(psi, std::span<const std::string>(k));
}

PureState permute_registers(const PureState& psi, std::span<const std::string> order) {
  const auto map = permutation_map(psi.layout(), order);
  std::vector<Complex> out(map.size());
  for (std::size_t j = 0; j < map.size(); ++j) out[j] = psi.amplitudes()[map[j]];
  return PureState(std::move(out), psi.layout().reordered(order), 1e-6);
}

// ---------------------------------------------------------------------------
// Fidelity

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  const ComplexMatrix a = matrix_sqrt_psd(rho.matrix());
  const ComplexMatrix b = matrix_sqrt_psd(sigma.matrix());
  return clamp_unit(trace_norm(a * b));
}

double fidelity(const PureState& psi, const DensityOperator& sigma) {
  if (psi.dim() != sigma.dim()) throw InputError("states have different dimensions");
  const auto sv = sigma.matrix() * std::span<const Complex>(psi.amplitudes());
  return clamp_unit(std::sqrt(std::max(0.0, inner(psi.amplitudes(), sv).real())));
}

double fidelity(const PureState& psi, const PureState& phi) {
  if (psi.dim() != phi.dim()) throw InputError("states have different dimensions");
  return clamp_unit(std::abs(inner(psi.amplitudes(), phi.amplitudes())));
}

double angle(const DensityOperator& rho, const DensityOperator& sigma) {
  return std::acos(fidelity(rho, sigma));
}

double fidelity_to_product(const PureState& psi,
                           const std::vector<std::vector<std::string>>& groups) {
  std::vector<std::string> order;
  for (const auto& g : groups) order.insert(order.end(), g.begin(), g.end());
  if (order.size() != psi.layout().size()) {
    throw InputError("fidelity_to_product: groups must partition the layout");
  }
  const PureState moved = permute_registers(psi, order);
  ComplexMatrix product = ComplexMatrix::identity(1);
  for (const auto& g : groups) product = kron(product, reduced_state(moved, g).matrix());
  return fidelity(moved, DensityOperator::trusted(std::move(product), moved.layout()));
}

double povm_outcome_bound(const DensityOperator& rho, const DensityOperator& sigma,
                          const Povm& e) {
  require_same_dim(rho, sigma);
  if (e.elements().front().rows() != rho.dim()) throw InputError("POVM dimension mismatch");
  double total = 0.0;
  for (const auto& el : e.elements()) {
    const double p = std::max(0.0, (rho.matrix() * el).trace().real());
    const double q = std::max(0.0, (sigma.matrix() * el).trace().real());
    total += std::sqrt(p * q);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Purification and Uhlmann

PureState purify(const DensityOperator& rho, const std::string& ancilla_label) {
  if (rho.layout().contains(ancilla_label)) {
    throw InputError("purify: ancilla label " + ancilla_label + " already in layout");
  }
  const std::size_t d = rho.dim();
  auto eig = hermitian_eig(rho.matrix());
  std::vector<Complex> amps(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t col = d - 1 - k;
    const double w = std::sqrt(std::max(0.0, eig.values[col]));
    for (std::size_t s = 0; s < d; ++s) amps[k * d + s] = w * eig.vectors(s, col);
  }
  RegisterLayout layout = RegisterLayout::single(d, ancilla_label).concat(rho.layout());
  return PureState::normalized(std::move(amps), std::move(layout));
}

ComplexMatrix uhlmann_isometry(const ComplexMatrix& source, const ComplexMatrix& target) {
  if (source.cols() != target.cols()) {
    throw InputError("uhlmann_isometry: system dimensions differ");
  }
  if (target.rows() < source.rows()) {
    throw InputError("uhlmann_isometry: target ancilla smaller than source ancilla");
  }
  const std::size_t ds = source.rows();
  const std::size_t dt = target.rows();
  const ComplexMatrix k = source * target.adjoint();  // ds x dt
  const ComplexMatrix kh = k.adjoint();
  auto eig = hermitian_eig(k * kh);

  // Images of the left singular vectors, strongest first, orthonormalized
  // and completed where the cross operator is degenerate.
  std::vector<std::vector<Complex>> images;
  double scale = 0.0;
  for (std::size_t i = ds; i-- > 0;) {
    auto w = kh * std::span<const Complex>(eig.vectors.column(i));
    scale = std::max(scale, norm(w));
    images.push_back(std::move(w));
  }
  std::vector<std::vector<Complex>> basis;
  std::size_t next_unit = 0;
  for (auto& w : images) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const Complex c = inner(b, w);
        for (std::size_t r = 0; r < dt; ++r) w[r] -= c * b[r];
      }
    }
    double n = norm(w);
    while (!(n > 1e-9 * std::max(scale, 1e-300))) {
      if (next_unit >= dt) throw ConvergenceError("uhlmann_isometry: completion failed");
      w.assign(dt, 0.0);
      w[next_unit++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          const Complex c = inner(b, w);
          for (std::size_t r = 0; r < dt; ++r) w[r] -= c * b[r];
        }
      }
      n = norm(w);
      if (n < 1e-6) n = 0.0;
    }
    for (Complex& z : w) z /= n;
    basis.push_back(w);
  }

  ComplexMatrix iso(dt, ds);
  for (std::size_t j = 0; j < ds; ++j) {
    const std::size_t col = ds - 1 - j;
    for (std::size_t r = 0; r < dt; ++r) {
      for (std::size_t c = 0; c < ds; ++c) {
        iso(r, c) += basis[j][r] * std::conj(eig.vectors(c, col));
      }
    }
  }
  return iso;
}

PureState uhlmann_partner(const DensityOperator& rho, const DensityOperator& sigma,
                          const PureState& phi) {
  require_same_dim(rho, sigma);
  const auto& sys = rho.layout().labels();
  for (const auto& l : sys) {
    if (!phi.layout().contains(l) || phi.layout().dim_of(l) != rho.layout().dim_of(l)) {
      throw InputError("uhlmann_partner: phi does not carry register " + l);
    }
  }
  const auto anc = phi.layout().complement(sys);
  if (anc.empty()) throw InputError("uhlmann_partner: phi has no ancilla");

  std::vector<std::string> order(anc);
  order.insert(order.end(), sys.begin(), sys.end());
  const PureState moved = permute_registers(phi, order);
  const ComplexMatrix target = reshape(moved, anc);  // dR x d
  if ((reduced_state(moved, sys).matrix() - rho.matrix()).max_abs() > 1e-8) {
    throw InputError("uhlmann_partner: phi does not purify rho");
  }

  const std::size_t d = sigma.dim();
  const std::size_t dr = target.rows();
  auto eig = hermitian_eig(sigma.matrix());
  std::size_t rank = 0;
  for (double v : eig.values) rank += v > kEntropyCutoff ? 1 : 0;
  if (rank > dr) throw InputError("uhlmann_partner: ancilla smaller than rank of sigma");

  const std::size_t m = std::min(d, dr);
  ComplexMatrix source(m, d);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t col = d - 1 - k;
    const double w = std::sqrt(std::max(0.0, eig.values[col]));
    for (std::size_t s = 0; s < d; ++s) source(k, s) = w * eig.vectors(s, col);
  }
  const ComplexMatrix w = uhlmann_isometry(source, target);
  const ComplexMatrix out = w * source;  // dR x d, row-major matches (anc, sys)
  std::vector<Complex> amps(out.entries().begin(), out.entries().end());
  PureState partner = PureState::normalized(std::move(amps), moved.layout());
  return permute_registers(partner, phi.layout().labels());
}

// ---------------------------------------------------------------------------
// Entropies

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double v : eigenvalues) {
    if (v > kEntropyCutoff) s -= v * std::log2(v);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_of_spectrum(hermitian_eig(rho.matrix()).values);
}

double conditional_entropy(const DensityOperator& rho, std::span<const std::string> a,
                           std::span<const std::string> c) {
  require_disjoint(a, c);
  const auto ac = join(a, c);
  return von_neumann_entropy(partial_trace(rho, ac)) -
         von_neumann_entropy(partial_trace(rho, c));
}

double mutual_information(const DensityOperator& rho, std::span<const std::string> x,
                          std::span<const std::string> y) {
  require_disjoint(x, y);
  if (x.empty() || y.empty()) throw InputError("mutual_information: empty register set");
  const auto xy = join(x, y);
  return von_neumann_entropy(partial_trace(rho, x)) +
         von_neumann_entropy(partial_trace(rho, y)) -
         von_neumann_entropy(partial_trace(rho, xy));
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  const auto es = hermitian_eig(sigma.matrix());
  const std::size_t d = rho.dim();
  double outside = 0.0;
  double cross = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const auto v = es.vectors.column(k);
    const double weight = inner(v, rho.matrix() * std::span<const Complex>(v)).real();
    if (es.values[k] > kSupportCutoff) {
      cross += weight * std::log2(es.values[k]);
    } else {
      outside += weight;
    }
  }
  if (outside > kSupportCutoff) return std::numeric_limits<double>::infinity();
  return -von_neumann_entropy(rho) - cross;
}

double min_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho, sigma);
  const auto es = hermitian_eig(sigma.matrix());
  const std::size_t d = rho.dim();
  std::vector<std::size_t> support;
  double outside = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (es.values[k] > kSupportCutoff) {
      support.push_back(k);
    } else {
      const auto v = es.vectors.column(k);
      outside += inner(v, rho.matrix() * std::span<const Complex>(v)).real();
    }
  }
  if (outside > kSupportCutoff) return std::numeric_limits<double>::infinity();

  const std::size_t r = support.size();
  ComplexMatrix q(d, r);
  for (std::size_t j = 0; j < r; ++j) {
    const double s = 1.0 / std::sqrt(es.values[support[j]]);
    for (std::size_t i = 0; i < d; ++i) q(i, j) = s * es.vectors(i, support[j]);
  }
  ComplexMatrix m = q.adjoint() * rho.matrix() * q;
  // Symmetrize rounding before the Hermitian solver sees it.
  for (std::size_t i = 0; i < r; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < r; ++j) {
      const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  const double top = max_eigenvalue(m);
  return std::log2(top);
}

DensityOperator pinch(const DensityOperator& rho, std::span<const std::string> regs) {
  const auto& layout = rho.layout();
  for (const auto& l : regs) layout.index_of(l);
  // Class label of each basis index: its digits on the measured registers.
  const auto measured = register_offsets(layout, regs);
  const auto rest = register_offsets(layout, layout.complement(regs));
  std::vector<std::size_t> cls(rho.dim());
  for (std::size_t m = 0; m < measured.size(); ++m) {
    for (std::size_t r : rest) cls[measured[m] + r] = m;
  }
  ComplexMatrix out = rho.matrix();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (cls[i] != cls[j]) out(i, j) = 0.0;
    }
  }
  return DensityOperator::trusted(std::move(out), layout);
}

DensityOperator measure_register(const PureState& psi, std::span<const std::string> regs) {
  return pinch(psi.density(), regs);
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, std::span<const std::string> cut) {
  const auto& layout = psi.layout();
  std::set<std::string> uniq(cut.begin(), cut.end());
  if (uniq.size() != cut.size()) throw InputError("schmidt_decompose: repeated label");
  SchmidtDecomposition out;
  out.left_layout = layout.select(cut);
  const auto rest = layout.complement(cut);
  if (out.left_layout.size() == 0 || rest.empty()) {
    throw InputError("schmidt_decompose: cut must split the layout into two nonempty parts");
  }
  out.right_layout = layout.select(rest);
  const ComplexMatrix m = reshape(psi, out.left_layout.labels());
  const ComplexMatrix mh = m.adjoint();
  auto eig = hermitian_eig(m * mh);

  std::vector<std::vector<Complex>> lefts, rights;
  for (std::size_t i = m.rows(); i-- > 0;) {
    auto u = eig.vectors.column(i);
    auto w = mh * std::span<const Complex>(u);  // conj of the right vector, scaled
    const double c = norm(w);
    if (c <= kSchmidtCutoff) continue;
    for (Complex& z : w) z = std::conj(z) / c;
    out.coefficients.push_back(c);
    lefts.push_back(std::move(u));
    rights.push_back(std::move(w));
  }
  std::vector<std::size_t> order(out.coefficients.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.coefficients[a] > out.coefficients[b];
  });
  const std::size_t r = order.size();
  std::vector<double> coeffs(r);
  out.left = ComplexMatrix(m.rows(), r);
  out.right = ComplexMatrix(m.cols(), r);
  for (std::size_t k = 0; k < r; ++k) {
    coeffs[k] = out.coefficients[order[k]];
    for (std::size_t i = 0; i < m.rows(); ++i) out.left(i, k) = lefts[order[k]][i];
    for (std::size_t j = 0; j < m.cols(); ++j) out.right(j, k) = rights[order[k]][j];
  }
  out.coefficients = std::move(coeffs);
  return out;
}

}  // namespace nlg
