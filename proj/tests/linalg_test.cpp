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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "nlg/errors.hpp"
#include "test_util.hpp"

namespace nlg {
namespace {

using testing::gaussian_matrix;
using testing::max_diff;
using testing::random_density;
using testing::random_hermitian;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  }
  return e;
}

ComplexMatrix diag(std::initializer_list<double> v) {
  std::vector<double> d(v);
  return ComplexMatrix::diagonal(std::span<const double>(d));
}

TEST(ComplexMatrix, RejectsNonFiniteAndWrongLength) {
  EXPECT_THROW(ComplexMatrix(2, 2, {1, 2, 3}), InputError);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(NAN, 0)}), InputError);
  EXPECT_THROW(ComplexMatrix(kMaxDimension + 1, 1), BudgetError);
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
            ComplexMatrix::identity(4));
}

TEST(Kron, BasisBookkeeping) {
  EXPECT_EQ(kron(diag({1, 0}), diag({0, 1})), diag({0, 1, 0, 0}));
}

TEST(Kron, TraceIsMultiplicative) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = gaussian_matrix(3, 3, rng);
    const auto b = gaussian_matrix(3, 3, rng);
    // Oracle: trace by explicit diagonal sum over the product indices.
    Complex expected = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t k = 0; k < 3; ++k) expected += a(i, i) * b(k, k);
    }
    EXPECT_NEAR(std::abs(kron(a, b).trace() - expected), 0.0, 1e-12);
  }
}

TEST(Kron, AssociativeAndOverflowChecked) {
  std::mt19937_64 rng(8);
  const auto a = gaussian_matrix(2, 3, rng);
  const auto b = gaussian_matrix(3, 2, rng);
  const auto c = gaussian_matrix(2, 2, rng);
  EXPECT_LT(max_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
  EXPECT_THROW(kron(ComplexMatrix::identity(128), ComplexMatrix::identity(64)), BudgetError);
}

TEST(HermitianEig, DiagonalInput) {
  auto e = hermitian_eig(diag({3, 1, 2}));
  ASSERT_EQ(e.values.size(), 3u);
  EXPECT_DOUBLE_EQ(e.values[0], 1.0);
  EXPECT_DOUBLE_EQ(e.values[1], 2.0);
  EXPECT_DOUBLE_EQ(e.values[2], 3.0);
}

TEST(HermitianEig, PauliX) {
  ComplexMatrix x(2, 2, {0, 1, 1, 0});
  auto e = hermitian_eig(x);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(HermitianEig, PauliY) {
  ComplexMatrix y(2, 2, {0, Complex(0, -1), Complex(0, 1), 0});
  auto e = hermitian_eig(y);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(HermitianEig, RandomReconstructionAndUnitarity) {
  std::mt19937_64 rng(11);
  for (std::size_t d : {1u, 2u, 3u, 6u, 17u, 40u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto h = random_hermitian(d, rng);
      auto e = hermitian_eig(h);
      const auto back = reconstruct(e, [](double x) { return x; });
      EXPECT_LE((h - back).frobenius_norm(), 1e-12 * std::max(1.0, h.frobenius_norm())) << d;
      const auto gram = e.vectors.adjoint() * e.vectors;
      EXPECT_LT(max_diff(gram, ComplexMatrix::identity(d)), 1e-11);
      EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));

      // Independent oracle for the spectrum.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(h));
      for (std::size_t i = 0; i < d; ++i) {
        EXPECT_NEAR(e.values[i], oracle.eigenvalues()(i), 1e-11);
      }
    }
  }
}

TEST(HermitianEig, DegenerateSpectrum) {
  std::mt19937_64 rng(12);
  // U diag(1,1,1,-2,-2) U^dagger
  const auto g = gaussian_matrix(5, 5, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(to_eigen(g));
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::VectorXd d(5);
  d << 1, 1, 1, -2, -2;
  Eigen::MatrixXcd h = q * d.asDiagonal() * q.adjoint();
  ComplexMatrix hm(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) hm(i, j) = h(i, j);
  }
  auto e = hermitian_eig(hm);
  EXPECT_NEAR(e.values[0], -2, 1e-12);
  EXPECT_NEAR(e.values[1], -2, 1e-12);
  EXPECT_NEAR(e.values[4], 1, 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  ComplexMatrix m(2, 2, {0, 1, 0, 0});
  EXPECT_THROW(hermitian_eig(m), InputError);
  EXPECT_THROW(hermitian_eig(ComplexMatrix(2, 3)), InputError);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Complex> bell{s, 0, 0, s};
  RegisterLayout layout({2, 2}, {"A", "B"});
  DensityOperator rho(ComplexMatrix::outer(bell, bell), layout);
  auto a = partial_trace(rho, {"A"});
  EXPECT_LT(max_diff(a.matrix(), 0.5 * ComplexMatrix::identity(2)), 1e-15);
  EXPECT_EQ(a.layout().labels(), std::vector<std::string>{"A"});
}

TEST(PartialTrace, ProductState) {
  std::mt19937_64 rng(13);
  const auto ra = random_density(2, rng);
  const auto rb = random_density(3, rng);
  DensityOperator rho(kron(ra, rb), RegisterLayout({2, 3}, {"A", "B"}));
  EXPECT_LT(max_diff(partial_trace(rho, {"A"}).matrix(), ra), 1e-14);
  EXPECT_LT(max_diff(partial_trace(rho, {"B"}).matrix(), rb), 1e-14);
}

TEST(PartialTrace, TracePreservedOnRandomState) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    DensityOperator rho(random_density(6, rng), RegisterLayout({2, 3}, {"A", "B"}));
    EXPECT_NEAR(partial_trace(rho, {"B"}).matrix().trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(partial_trace(rho, {"A"}).matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, SequentialEqualsJoint) {
  std::mt19937_64 rng(15);
  RegisterLayout layout({2, 3, 2}, {"A", "B", "C"});
  DensityOperator rho(random_density(12, rng), layout);
  auto ac = partial_trace(rho, {"A", "C"});
  auto a1 = partial_trace(ac, {"A"});
  auto ab = partial_trace(rho, {"A", "B"});
  auto a2 = partial_trace(ab, {"A"});
  auto a3 = partial_trace(rho, {"A"});
  EXPECT_LT(max_diff(a1.matrix(), a3.matrix()), 1e-14);
  EXPECT_LT(max_diff(a2.matrix(), a3.matrix()), 1e-14);
}

TEST(PartialTrace, KeepsLayoutOrderAndRejectsUnknownLabels) {
  std::mt19937_64 rng(16);
  const auto ra = random_density(2, rng);
  const auto rb = random_density(3, rng);
  const auto rc = random_density(2, rng);
  DensityOperator rho(kron(kron(ra, rb), rc), RegisterLayout({2, 3, 2}, {"A", "B", "C"}));
  auto ca = partial_trace(rho, {"C", "A"});
  EXPECT_EQ(ca.layout().labels(), (std::vector<std::string>{"A", "C"}));
  EXPECT_LT(max_diff(ca.matrix(), kron(ra, rc)), 1e-14);
  EXPECT_THROW(partial_trace(rho, {"Z"}), InputError);
}

TEST(PermuteRegisters, SwapsTensorFactors) {
  std::mt19937_64 rng(17);
  const auto ra = random_density(2, rng);
  const auto rb = random_density(3, rng);
  DensityOperator rho(kron(ra, rb), RegisterLayout({2, 3}, {"A", "B"}));
  std::vector<std::string> order{"B", "A"};
  auto swapped = permute_registers(rho, order);
  EXPECT_LT(max_diff(swapped.matrix(), kron(rb, ra)), 1e-15);
  EXPECT_EQ(swapped.layout().dims(), (std::vector<std::size_t>{3, 2}));
}

TEST(DensityOperator, Validation) {
  RegisterLayout q = RegisterLayout::single(2);
  EXPECT_THROW(DensityOperator(diag({0.6, 0.6}), q), InputError);
  EXPECT_THROW(DensityOperator(diag({1.5, -0.5}), q), InputError);
  EXPECT_THROW(DensityOperator(ComplexMatrix(2, 2, {0.5, 1, 0, 0.5}), q), InputError);
  EXPECT_THROW(DensityOperator(diag({1, 0, 0}), q), InputError);
  EXPECT_NO_THROW(DensityOperator(diag({1, 0}), q));
  EXPECT_THROW(RegisterLayout({2, 2}, {"A", "A"}), InputError);
}

TEST(MatrixSqrt, Diagonal) {
  EXPECT_LT(max_diff(matrix_sqrt_psd(diag({4, 9})), diag({2, 3})), 1e-15);
}

TEST(MatrixSqrt, ProjectorIsFixed) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Complex> plus{s, s};
  const auto p = ComplexMatrix::outer(plus, plus);
  EXPECT_LT(max_diff(matrix_sqrt_psd(p), p), 1e-14);
}

TEST(MatrixSqrt, RandomPsdResidual) {
  std::mt19937_64 rng(18);
  for (std::size_t d : {2u, 4u, 8u}) {
    for (std::size_t rank : {std::size_t{1}, d}) {
      const auto a = testing::random_psd(d, rank, rng);
      const auto r = matrix_sqrt_psd(a);
      EXPECT_LE((r * r - a).frobenius_norm(), 1e-10);
      EXPECT_GE(min_eigenvalue(r), -1e-12);
    }
  }
}

TEST(MatrixSqrt, RejectsNegative) {
  EXPECT_THROW(matrix_sqrt_psd(diag({1, -1e-3})), InputError);
  EXPECT_NO_THROW(matrix_sqrt_psd(diag({1, -1e-12})));
}

TEST(TraceNorm, UnitaryAndDiagonal) {
  std::mt19937_64 rng(19);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(to_eigen(gaussian_matrix(5, 5, rng)));
  Eigen::MatrixXcd q = qr.householderQ();
  ComplexMatrix u(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) u(i, j) = q(i, j);
  }
  EXPECT_NEAR(trace_norm(u), 5.0, 1e-12);
  EXPECT_NEAR(trace_norm(diag({1, -2})), 3.0, 1e-15);
}

TEST(TraceNorm, MatchesSvdOracle) {
  std::mt19937_64 rng(20);
  for (std::size_t d : {2u, 3u, 7u, 12u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = gaussian_matrix(d, d, rng);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
      EXPECT_NEAR(trace_norm(a), svd.singularValues().sum(), 1e-10);
    }
  }
}

TEST(TraceNorm, LowRankKeepsSmallSingularValues) {
  std::mt19937_64 rng(21);
  const auto a = gaussian_matrix(4, 1, rng) * gaussian_matrix(1, 4, rng);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  EXPECT_NEAR(trace_norm(a), svd.singularValues().sum(), 1e-12);
}

}  // namespace
}  // namespace nlg
