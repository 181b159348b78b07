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

#include <algorithm>
#include <cmath>

#include "nlg/errors.hpp"
#include "nlg/games.hpp"
#include "nlg/parallel.hpp"
#include "nlg/random.hpp"

namespace nlg {

namespace {

using Measurement = std::vector<ComplexMatrix>;

constexpr std::uint64_t kSeesawStream = 0x5345455341570001ULL;
constexpr int kMaxPairPasses = 50;

// Tr(a b) for square matrices of equal size.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.rows();
  Complex t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  }
  return t.real();
}

void symmetrize(ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
}

ComplexMatrix projector_onto(const ComplexMatrix& basis, const std::vector<std::size_t>& cols) {
  const std::size_t d = basis.rows();
  ComplexMatrix p(d, d);
  for (std::size_t c : cols) {
    for (std::size_t i = 0; i < d; ++i) {
      const Complex bi = basis(i, c);
      for (std::size_t j = 0; j < d; ++j) p(i, j) += bi * std::conj(basis(j, c));
    }
  }
  return p;
}

Measurement random_measurement(std::size_t d, std::size_t l, Rng& rng) {
  const ComplexMatrix u = haar_unitary(d, rng);
  std::uniform_int_distribution<std::size_t> pick(0, l - 1);
  std::vector<std::vector<std::size_t>> cols(l);
  for (std::size_t c = 0; c < d; ++c) cols[pick(rng)].push_back(c);
  Measurement m;
  for (std::size_t a = 0; a < l; ++a) m.push_back(projector_onto(u, cols[a]));
  return m;
}

// Best response given payoff operators: each pair of outputs re-splits the
// subspace it jointly occupies along the eigenvectors of the payoff
// difference. Exact for two outputs, never decreases sum_a Tr(M_a R_a), and
// zero-eigenvalue ties go to the lower output index.
void improve_measurement(Measurement& m, const std::vector<ComplexMatrix>& payoff) {
  const std::size_t l = m.size();
  if (l < 2) return;
  for (int pass = 0; pass < kMaxPairPasses; ++pass) {
    double gain = 0.0;
    for (std::size_t a = 0; a < l; ++a) {
      for (std::size_t b = a + 1; b < l; ++b) {
        ComplexMatrix joint = m[a] + m[b];
        const double before = trace_product(m[a], payoff[a]) + trace_product(m[b], payoff[b]);
        symmetrize(joint);
        auto je = hermitian_eig(joint);
        std::vector<std::size_t> support;
        for (std::size_t c = 0; c < je.values.size(); ++c) {
          if (je.values[c] > 0.5) support.push_back(c);
        }
        if (support.empty()) continue;
        const std::size_t r = support.size();
        const std::size_t d = joint.rows();
        ComplexMatrix q(d, r);
        for (std::size_t j = 0; j < r; ++j) {
          for (std::size_t i = 0; i < d; ++i) q(i, j) = je.vectors(i, support[j]);
        }
        ComplexMatrix diff = q.adjoint() * (payoff[a] - payoff[b]) * q;
        symmetrize(diff);
        auto de = hermitian_eig(diff);
        const ComplexMatrix rotated = q * de.vectors;
        std::vector<std::size_t> to_a, to_b;
        for (std::size_t c = 0; c < r; ++c) (de.values[c] >= 0.0 ? to_a : to_b).push_back(c);
        ComplexMatrix na = projector_onto(rotated, to_a);
        ComplexMatrix nb = projector_onto(rotated, to_b);
        const double after = trace_product(na, payoff[a]) + trace_product(nb, payoff[b]);
        if (after >= before) {
          m[a] = std::move(na);
          m[b] = std::move(nb);
          gain += after - before;
        }
      }
    }
    if (gain < 1e-15) break;
  }
}

// State with amplitudes phi(i, j) on (A, B); shared or fixed per (x, y).
class Seesaw {
 public:
  Seesaw(const Game& g, std::size_t da, std::size_t db, std::vector<ComplexMatrix> phis)
      : g_(g), da_(da), db_(db), phis_(std::move(phis)) {}

  const ComplexMatrix& phi(std::size_t x, std::size_t y) const {
    return phis_.size() == 1 ? phis_[0] : phis_[x * g_.k() + y];
  }

  double value() const {
    const std::size_t k = g_.k(), l = g_.l();
    double total = 0.0;
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        const double pxy = g_.p(x, y);
        if (pxy == 0.0) continue;
        const ComplexMatrix& f = phi(x, y);
        const ComplexMatrix fh = f.adjoint();
        for (std::size_t b = 0; b < l; ++b) {
          const ComplexMatrix n = f * bob[y][b].transpose() * fh;
          for (std::size_t a = 0; a < l; ++a) {
            if (g_.wins(a, b, x, y)) total += pxy * trace_product(alice[x][a], n);
          }
        }
      }
    }
    return total;
  }

  void update_alice() {
    const std::size_t k = g_.k(), l = g_.l();
    for (std::size_t x = 0; x < k; ++x) {
      std::vector<ComplexMatrix> r(l, ComplexMatrix(da_, da_));
      for (std::size_t y = 0; y < k; ++y) {
        const double pxy = g_.p(x, y);
        if (pxy == 0.0) continue;
        const ComplexMatrix& f = phi(x, y);
        const ComplexMatrix fh = f.adjoint();
        for (std::size_t b = 0; b < l; ++b) {
          ComplexMatrix n = f * bob[y][b].transpose() * fh;
          n *= pxy;
          for (std::size_t a = 0; a < l; ++a) {
            if (g_.wins(a, b, x, y)) r[a] += n;
          }
        }
      }
      for (auto& m : r) symmetrize(m);
      improve_measurement(alice[x], r);
    }
  }

  void update_bob() {
    const std::size_t k = g_.k(), l = g_.l();
    for (std::size_t y = 0; y < k; ++y) {
      std::vector<ComplexMatrix> t(l, ComplexMatrix(db_, db_));
      for (std::size_t x = 0; x < k; ++x) {
        const double pxy = g_.p(x, y);
        if (pxy == 0.0) continue;
        const ComplexMatrix& f = phi(x, y);
        const ComplexMatrix fh = f.adjoint();
        for (std::size_t a = 0; a < l; ++a) {
          ComplexMatrix s = (fh * alice[x][a] * f).transpose();
          s *= pxy;
          for (std::size_t b = 0; b < l; ++b) {
            if (g_.wins(a, b, x, y)) t[b] += s;
          }
        }
      }
      for (auto& m : t) symmetrize(m);
      improve_measurement(bob[y], t);
    }
  }

  // Shared state only: top eigenvector of the game operator.
  void update_state() {
    const std::size_t k = g_.k(), l = g_.l();
    ComplexMatrix op(da_ * db_, da_ * db_);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t a = 0; a < l; ++a) {
        ComplexMatrix c(db_, db_);
        for (std::size_t y = 0; y < k; ++y) {
          const double pxy = g_.p(x, y);
          if (pxy == 0.0) continue;
          for (std::size_t b = 0; b < l; ++b) {
            if (!g_.wins(a, b, x, y)) continue;
            ComplexMatrix term = bob[y][b];
            term *= pxy;
            c += term;
          }
        }
        op += kron(alice[x][a], c);
      }
    }
    symmetrize(op);
    auto e = hermitian_eig(op);
    const std::size_t top = e.values.size() - 1;
    ComplexMatrix f(da_, db_);
    for (std::size_t i = 0; i < da_; ++i) {
      for (std::size_t j = 0; j < db_; ++j) f(i, j) = e.vectors(i * db_ + j, top);
    }
    phis_[0] = std::move(f);
  }

  PureState shared_state() const {
    const auto& f = phis_[0];
    std::vector<Complex> amps(f.entries().begin(), f.entries().end());
    return PureState::normalized(std::move(amps), RegisterLayout({da_, db_}, {"A", "B"}));
  }

  std::vector<Measurement> alice;
  std::vector<Measurement> bob;

 private:
  const Game& g_;
  std::size_t da_;
  std::size_t db_;
  std::vector<ComplexMatrix> phis_;
};

ComplexMatrix as_matrix(const std::vector<Complex>& v, std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, v);
}

struct RunOutcome {
  RestartTrace trace;
  std::vector<double> history;
  double value = 0.0;
  std::vector<Measurement> alice, bob;
  PureState state;
};

RunOutcome run_restart(const Game& g, std::size_t da, std::size_t db,
                       const std::vector<ComplexMatrix>* fixed, const SeesawOptions& opt,
                       std::size_t restart) {
  Rng rng(derive_seed(opt.seed, kSeesawStream, restart));
  std::vector<ComplexMatrix> phis;
  if (fixed != nullptr) {
    phis = *fixed;
  } else {
    phis.push_back(as_matrix(haar_vector(da * db, rng), da, db));
  }
  Seesaw s(g, da, db, std::move(phis));
  for (std::size_t x = 0; x < g.k(); ++x) s.alice.push_back(random_measurement(da, g.l(), rng));
  for (std::size_t y = 0; y < g.k(); ++y) s.bob.push_back(random_measurement(db, g.l(), rng));

  RunOutcome out;
  out.trace.restart = restart;
  double current = s.value();
  out.trace.initial = current;
  out.history.push_back(current);
  for (std::size_t it = 0; it < opt.iters; ++it) {
    s.update_alice();
    s.update_bob();
    if (fixed == nullptr) s.update_state();
    const double next = s.value();
    out.history.push_back(next);
    out.trace.iterations = it + 1;
    out.trace.worst_decrease = std::max(out.trace.worst_decrease, current - next);
    const bool stalled = next - current < opt.stall;
    current = next;
    if (stalled) {
      out.trace.stalled = true;
      break;
    }
  }
  out.trace.final = current;
  out.value = current;
  out.alice = std::move(s.alice);
  out.bob = std::move(s.bob);
  if (fixed == nullptr) out.state = s.shared_state();
  return out;
}

std::vector<RunOutcome> run_all(const Game& g, std::size_t da, std::size_t db,
                                const std::vector<ComplexMatrix>* fixed,
                                const SeesawOptions& opt) {
  if (opt.restarts == 0) throw InputError("restarts must be at least 1");
  std::vector<RunOutcome> runs(opt.restarts);
  parallel_for(opt.restarts, opt.jobs,
               [&](std::size_t r) { runs[r] = run_restart(g, da, db, fixed, opt, r); });
  return runs;
}

// Values within rounding of each other count as ties.
constexpr double kTieTolerance = 1e-12;

std::size_t best_index(const std::vector<RunOutcome>& runs) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].value > runs[best].value + kTieTolerance) best = r;
  }
  return best;
}

// Lifts a d = 1 strategy (scalar projectors) to local dimension d on |00>.
QuantumStrategy embed(const RunOutcome& unit, std::size_t d) {
  QuantumStrategy s;
  std::vector<Complex> amps(d * d, 0.0);
  amps[0] = 1.0;
  s.state = PureState(std::move(amps), RegisterLayout({d, d}, {"A", "B"}));
  auto lift = [d](const std::vector<Measurement>& ms) {
    std::vector<Measurement> out;
    for (const auto& m : ms) {
      Measurement lifted;
      for (const auto& p : m) {
        lifted.push_back(p(0, 0).real() > 0.5 ? ComplexMatrix::identity(d) : ComplexMatrix(d, d));
      }
      out.push_back(std::move(lifted));
    }
    return out;
  };
  s.alice = lift(unit.alice);
  s.bob = lift(unit.bob);
  return s;
}

void check_projective(const Measurement& m, std::size_t d, std::size_t l, double tol) {
  if (m.size() != l) throw InputError("measurement has the wrong number of outcomes");
  ComplexMatrix total(d, d);
  for (std::size_t a = 0; a < l; ++a) {
    const auto& p = m[a];
    if (p.rows() != d || p.cols() != d) throw InputError("measurement element has wrong shape");
    if (!is_hermitian(p, tol)) throw InputError("measurement element is not Hermitian");
    if ((p * p - p).max_abs() > tol) throw InputError("measurement element is not a projector");
    for (std::size_t b = a + 1; b < l; ++b) {
      if ((p * m[b]).max_abs() > tol) throw InputError("measurement elements are not orthogonal");
    }
    total += p;
  }
  if ((total - ComplexMatrix::identity(d)).max_abs() > tol) {
    throw InputError("measurement elements do not sum to the identity");
  }
}

}  // namespace

void validate_strategy(const Game& g, const QuantumStrategy& s, double tol) {
  const auto& dims = s.state.layout().dims();
  if (dims.size() != 2) throw InputError("strategy state must have two registers");
  if (s.alice.size() != g.k() || s.bob.size() != g.k()) {
    throw InputError("strategy needs one measurement per input");
  }
  for (const auto& m : s.alice) check_projective(m, dims[0], g.l(), tol);
  for (const auto& m : s.bob) check_projective(m, dims[1], g.l(), tol);
}

double strategy_win_probability(const Game& g, const QuantumStrategy& s) {
  validate_strategy(g, s);
  const auto& dims = s.state.layout().dims();
  Seesaw eval(g, dims[0], dims[1], {as_matrix(s.state.amplitudes(), dims[0], dims[1])});
  eval.alice = s.alice;
  eval.bob = s.bob;
  return eval.value();
}

SeesawResult entangled_value_seesaw(const Game& g, const SeesawOptions& opt) {
  if (opt.d == 0) throw InputError("local dimension d must be at least 1");
  if (opt.d * opt.d > kMaxDimension) throw BudgetError("local dimension too large");
  auto runs = run_all(g, opt.d, opt.d, nullptr, opt);
  const std::size_t best = best_index(runs);

  SeesawResult res;
  for (const auto& r : runs) res.restarts.push_back(r.trace);
  res.best_restart = best;
  res.value = runs[best].value;
  res.history = runs[best].history;
  res.strategy = {runs[best].state, runs[best].alice, runs[best].bob};

  if (opt.d == 1) {
    res.d1_value = res.value;
    return res;
  }
  auto unit_runs = run_all(g, 1, 1, nullptr, opt);
  const std::size_t ub = best_index(unit_runs);
  res.d1_value = unit_runs[ub].value;
  if (res.d1_value > res.value + kTieTolerance) {
    res.value = res.d1_value;
    res.strategy = embed(unit_runs[ub], opt.d);
    res.best_restart = ub;
    res.from_d1 = true;
    res.history = unit_runs[ub].history;
  }
  return res;
}

void validate_advice(const Game& g, const AdviceEnsemble& adv) {
  if (adv.states.size() != g.k() * g.k()) {
    throw InputError("advice ensemble needs one state per input pair");
  }
  for (const auto& s : adv.states) {
    const auto& dims = s.layout().dims();
    if (dims.size() != 2 || dims[0] != adv.dim_a || dims[1] != adv.dim_b) {
      throw InputError("advice state dimensions differ from the ensemble's (dim_a, dim_b)");
    }
  }
}

namespace {

std::vector<ComplexMatrix> advice_matrices(const AdviceEnsemble& adv) {
  std::vector<ComplexMatrix> out;
  for (const auto& s : adv.states) out.push_back(as_matrix(s.amplitudes(), adv.dim_a, adv.dim_b));
  return out;
}

}  // namespace

double advice_win_probability(const Game& g, const AdviceEnsemble& adv,
                              const std::vector<std::vector<ComplexMatrix>>& alice,
                              const std::vector<std::vector<ComplexMatrix>>& bob) {
  validate_advice(g, adv);
  if (alice.size() != g.k() || bob.size() != g.k()) {
    throw InputError("need one measurement per input");
  }
  for (const auto& m : alice) check_projective(m, adv.dim_a, g.l(), 1e-8);
  for (const auto& m : bob) check_projective(m, adv.dim_b, g.l(), 1e-8);
  Seesaw eval(g, adv.dim_a, adv.dim_b, advice_matrices(adv));
  eval.alice = alice;
  eval.bob = bob;
  return eval.value();
}

AdviceResult value_with_advice(const Game& g, const AdviceEnsemble& adv,
                               const SeesawOptions& opt) {
  validate_advice(g, adv);
  const auto phis = advice_matrices(adv);
  auto runs = run_all(g, adv.dim_a, adv.dim_b, &phis, opt);
  const std::size_t best = best_index(runs);
  AdviceResult res;
  for (const auto& r : runs) res.restarts.push_back(r.trace);
  res.best_restart = best;
  res.value = runs[best].value;
  res.alice = runs[best].alice;
  res.bob = runs[best].bob;
  return res;
}

}  // namespace nlg
