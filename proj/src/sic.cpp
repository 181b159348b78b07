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

#include "nlg/sic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nlg/errors.hpp"

namespace nlg {

namespace {

const std::vector<std::string> kLabels{"X", "A", "B", "Y"};

// Amplitude phi_xy(a, b).
Complex advice_amp(const SuperposedState& s, std::size_t x, std::size_t y, std::size_t a,
                   std::size_t b) {
  return s.advice.states[x * s.k + y].amplitudes()[a * s.advice.dim_b + b];
}

std::vector<std::string> labels(std::initializer_list<const char*> l) {
  return std::vector<std::string>(l.begin(), l.end());
}

}  // namespace

SuperposedState make_superposed_state(std::size_t k, std::vector<double> p,
                                      AdviceEnsemble advice) {
  if (k == 0 || p.size() != k * k) throw InputError("superposed state: p must be k x k");
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("superposed state: negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("superposed state: p does not sum to 1");
  if (advice.states.size() != k * k) {
    throw InputError("superposed state: need one advice state per (x, y)");
  }
  const std::size_t da = advice.dim_a, db = advice.dim_b;
  for (const auto& s : advice.states) {
    const auto& dims = s.layout().dims();
    if (dims.size() != 2 || dims[0] != da || dims[1] != db) {
      throw InputError("superposed state: advice dimensions are inconsistent");
    }
  }
  SuperposedState out;
  out.k = k;
  out.p = std::move(p);
  out.advice = std::move(advice);
  std::vector<Complex> amps(k * da * db * k);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      const double w = std::sqrt(out.p[x * k + y]);
      for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
          amps[((x * da + a) * db + b) * k + y] = w * advice_amp(out, x, y, a, b);
        }
      }
    }
  }
  out.realized = PureState(std::move(amps), RegisterLayout({k, da, db, k}, kLabels));
  return out;
}

SicTerms sic_objective(const SuperposedState& omega) {
  SicTerms t;
  const auto x = labels({"X"}), y = labels({"Y"});
  const auto by = labels({"B", "Y"}), xa = labels({"X", "A"});
  const auto xby = labels({"X", "B", "Y"}), xay = labels({"X", "A", "Y"});
  // Pinching a register commutes with tracing out the others.
  const auto rx = pinch(reduced_state(omega.realized, xby), x);
  const auto ry = pinch(reduced_state(omega.realized, xay), y);
  t.i_x_by = std::max(0.0, mutual_information(rx, x, by));
  t.i_y_xa = std::max(0.0, mutual_information(ry, y, xa));
  return t;
}

DecouplingResult build_decoupling(const SuperposedState& omega) {
  const std::size_t k = omega.k;
  const std::size_t da = omega.advice.dim_a, db = omega.advice.dim_b;
  std::vector<double> px(k, 0.0), py(k, 0.0);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      px[x] += omega.p[x * k + y];
      py[y] += omega.p[x * k + y];
    }
  }
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      if (std::abs(omega.p[x * k + y] - px[x] * py[y]) > 1e-10) {
        throw InputError("build_decoupling requires a product input distribution");
      }
    }
  }

  DecouplingResult res;
  const SicTerms terms = sic_objective(omega);
  res.delta_alice = terms.i_x_by;
  res.delta_bob = terms.i_y_xa;
  res.delta = std::max(res.delta_alice, res.delta_bob);

  // Omega as (X A) x (B Y) and as (B Y) x (X A).
  ComplexMatrix omega_xa(k * da, db * k), omega_by(db * k, k * da);
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      const double w = std::sqrt(omega.p[x * k + y]);
      for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) {
          const Complex z = w * advice_amp(omega, x, y, a, b);
          omega_xa(x * da + a, b * k + y) = z;
          omega_by(b * k + y, x * da + a) = z;
        }
      }
    }
  }

  auto fixed_embedding = [](std::size_t rows, std::size_t cols) {
    ComplexMatrix e(rows, cols);
    for (std::size_t i = 0; i < cols; ++i) e(i, i) = 1.0;
    return e;
  };

  for (std::size_t x = 0; x < k; ++x) {
    if (px[x] <= 0.0) {
      res.isometries_alice.push_back(fixed_embedding(k * da, da));
      continue;
    }
    ComplexMatrix psi(da, db * k);
    for (std::size_t y = 0; y < k; ++y) {
      const double w = std::sqrt(omega.p[x * k + y] / px[x]);
      for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) psi(a, b * k + y) = w * advice_amp(omega, x, y, a, b);
      }
    }
    res.isometries_alice.push_back(uhlmann_isometry(psi, omega_xa));
  }
  for (std::size_t y = 0; y < k; ++y) {
    if (py[y] <= 0.0) {
      res.isometries_bob.push_back(fixed_embedding(db * k, db));
      continue;
    }
    ComplexMatrix psi(db, k * da);
    for (std::size_t x = 0; x < k; ++x) {
      const double w = std::sqrt(omega.p[x * k + y] / py[y]);
      for (std::size_t a = 0; a < da; ++a) {
        for (std::size_t b = 0; b < db; ++b) psi(b, x * da + a) = w * advice_amp(omega, x, y, a, b);
      }
    }
    res.isometries_bob.push_back(uhlmann_isometry(psi, omega_by));
  }

  // sum_xy sqrt(p_xy) |x> (U x V) |phi_xy> |y> for optional U, V.
  auto apply = [&](bool alice, bool bob) {
    const std::size_t a_out = alice ? k * da : da;
    const std::size_t b_out = bob ? db * k : db;
    std::vector<Complex> amps(k * a_out * b_out * k);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        const double w = std::sqrt(omega.p[x * k + y]);
        if (w == 0.0) continue;
        ComplexMatrix phi(da, db, omega.advice.states[x * k + y].amplitudes());
        if (alice) phi = res.isometries_alice[x] * phi;
        if (bob) phi = phi * res.isometries_bob[y].transpose();
        for (std::size_t a = 0; a < a_out; ++a) {
          for (std::size_t b = 0; b < b_out; ++b) {
            amps[((x * a_out + a) * b_out + b) * k + y] = w * phi(a, b);
          }
        }
      }
    }
    RegisterLayout layout({k, a_out, b_out, k},
                          {"X", alice ? "A'" : "A", bob ? "B'" : "B", "Y"});
    return PureState::normalized(std::move(amps), std::move(layout));
  };

  const PureState omega1 = apply(true, false);
  const PureState omega2 = apply(false, true);
  res.omega3 = apply(true, true);
  res.fbar_alice = 1.0 - fidelity_to_product(omega1, {{"X"}, {"A'", "B", "Y"}});
  res.fbar_bob = 1.0 - fidelity_to_product(omega2, {{"X", "A", "B'"}, {"Y"}});
  res.fbar_out = 1.0 - fidelity_to_product(res.omega3, {{"X", "Y"}, {"A'", "B'"}});
  res.fbar_x_rest = 1.0 - fidelity_to_product(res.omega3, {{"X"}, {"A'", "B'", "Y"}});
  return res;
}

SuperposedState random_superposed_state(std::size_t k, std::size_t dim_a, std::size_t dim_b,
                                        Rng& rng) {
  std::uniform_real_distribution<double> u(std::log(1e-3), 0.0);
  const double eta = std::exp(u(rng));
  const std::size_t d = dim_a * dim_b;
  const auto base = haar_vector(d, rng);
  AdviceEnsemble adv{dim_a, dim_b, {}};
  for (std::size_t i = 0; i < k * k; ++i) {
    auto g = haar_vector(d, rng);
    std::vector<Complex> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = base[j] + eta * g[j];
    adv.states.push_back(PureState::normalized(std::move(v), RegisterLayout({dim_a, dim_b}, {"A", "B"})));
  }
  std::vector<double> p(k * k, 1.0 / static_cast<double>(k * k));
  return make_superposed_state(k, std::move(p), std::move(adv));
}

double sic_lower_bound(double epsilon, double delta) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0) || !(delta >= 0.0 && delta <= 1.0)) {
    throw InputError("sic_lower_bound: epsilon and delta must lie in [0, 1]");
  }
  return (1.0 - std::sqrt((1.0 - epsilon) * (1.0 - delta)) - std::sqrt(delta * epsilon)) / 81.0;
}

namespace {

template <typename Margin>
ScalarGridReport grid_report(std::size_t points, double lo, double hi, Margin margin) {
  if (points < 2) throw InputError("grid needs at least two points");
  ScalarGridReport r;
  r.points = points;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double m = margin(t);
    if (m < r.worst_margin) {
      r.worst_margin = m;
      r.worst_at = t;
    }
    if (m < 0.0) {
      if (r.failures == 0) r.fail_lo = t;
      r.fail_hi = t;
      ++r.failures;
    }
  }
  return r;
}

}  // namespace

ScalarGridReport check_sic_general_case(std::size_t points) {
  // Rounding slack: both sides vanish at eps = 0.
  return grid_report(points, 0.0, 1.0, [](double e) {
    return sic_lower_bound(e, 0.0) - e / 162.0 + 1e-15;
  });
}

ScalarGridReport check_sic_eighth_case(std::size_t points) {
  return grid_report(points, 0.0, 1.0, [](double e) {
    return sic_lower_bound(e, e / 8.0) - e / 324.0 + 1e-15;
  });
}

ScalarGridReport check_sic_shifted_case(std::size_t points) {
  return grid_report(points, 0.0, 1.0, [](double e) {
    return sic_lower_bound(e / 4.0, e / 32.0) - e / 1296.0 + 1e-15;
  });
}

ScalarGridReport check_angle_thirds(std::size_t points) {
  return grid_report(points, 0.0, std::numbers::pi, [](double a) {
    return 9.0 * (1.0 - std::cos(a / 3.0)) - (1.0 - std::cos(a)) + 1e-15;
  });
}

double game_shift_distance(double omega, double epsilon) {
  return 1.0 - std::sqrt(omega * (1.0 - epsilon)) - std::sqrt((1.0 - omega) * epsilon);
}

ShiftCheckReport rel_ent_game_shift_check(double epsilon, std::size_t grid_points) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in (0, 1]");
  if (grid_points < 2) throw InputError("grid needs at least two points");
  ShiftCheckReport r;
  r.epsilon = epsilon;
  r.grid_points = grid_points;
  const double level = epsilon / 8.0;
  const double bound = 1.0 - epsilon / 4.0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    if (game_shift_distance(w, epsilon) <= level && w > bound + 1e-12) ++r.violations;
  }
  // g vanishes at w = 1 - eps and increases on [1 - eps, 1].
  double lo = 1.0 - epsilon, hi = 1.0;
  if (game_shift_distance(hi, epsilon) <= level) {
    lo = hi;
  } else {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (game_shift_distance(mid, epsilon) <= level ? lo : hi) = mid;
    }
  }
  r.root = lo;
  r.margin = bound - r.root;
  r.g_at_bound = game_shift_distance(bound, epsilon);
  return r;
}

}  // namespace nlg
