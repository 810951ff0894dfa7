#include <gtest/gtest.h>

#include <random>

#include "niga/linalg/linalg.hpp"

using namespace niga;
using namespace niga::linalg;

namespace {
SparseMatrix sparse(const Eigen::MatrixXd& A) { return A.sparseView(); }
}  // namespace

TEST(Solve, Identity) {
  Eigen::VectorXd F(3);
  F << 1, 2, 3;
  EXPECT_NEAR((solve_linear(sparse(Eigen::MatrixXd::Identity(3, 3)), F) - F).norm(), 0.0, 1e-15);
}

TEST(Solve, Nonsymmetric2x2) {
  Eigen::MatrixXd A(2, 2);
  A << 2, 1, 0, 3;
  const auto x = solve_linear(sparse(A), Eigen::Vector2d(3, 3));
  EXPECT_NEAR(x[0], 1.0, 1e-14);
  EXPECT_NEAR(x[1], 1.0, 1e-14);
}

TEST(Solve, RandomSpdResidual) {
  std::mt19937 rng(11);
  std::normal_distribution<double> N;
  Eigen::MatrixXd R(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) R(i, j) = N(rng);
  const Eigen::MatrixXd A = R * R.transpose() + 50 * Eigen::MatrixXd::Identity(50, 50);
  Eigen::VectorXd F(50);
  for (int i = 0; i < 50; ++i) F[i] = N(rng);
  const SparseMatrix S = sparse(A);
  const auto x = solve_linear(S, F);
  EXPECT_LE((S * x - F).norm(), 1e-10 * (A.norm() * x.norm() + F.norm()));
}

TEST(Solve, SingularReportsRank) {
  Eigen::MatrixXd A(3, 3);
  A << 1, 2, 3, 2, 4, 6, 0, 0, 1;
  try {
    solve_linear(sparse(A), Eigen::Vector3d(1, 1, 1));
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.rank_estimate(), 2);
  }
}

TEST(Eig, Diagonal) {
  const Eigen::MatrixXd A = Eigen::Vector2d(1, 4).asDiagonal();
  const auto r = generalized_symmetric_eig(A, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_NEAR(r.values[0], 1.0, 1e-14);
  EXPECT_NEAR(r.values[1], 4.0, 1e-14);
}

TEST(Eig, EqualPair) {
  Eigen::MatrixXd A(3, 3);
  A << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const auto r = generalized_symmetric_eig(A, A);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.values[i], 1.0, 1e-12);
}

TEST(Eig, RandomPairResidualAndOrthogonality) {
  std::mt19937 rng(5);
  std::normal_distribution<double> N;
  Eigen::MatrixXd X(20, 20), Y(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) X(i, j) = N(rng), Y(i, j) = N(rng);
  const Eigen::MatrixXd A = X + X.transpose();
  const Eigen::MatrixXd B = Y * Y.transpose() + 20 * Eigen::MatrixXd::Identity(20, 20);
  const auto r = generalized_symmetric_eig(A, B);
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXd v = r.vectors.col(k);
    EXPECT_LE((A * v - r.values[k] * B * v).norm(), 1e-8 * A.norm() * v.norm());
  }
  EXPECT_NEAR((r.vectors.transpose() * B * r.vectors - Eigen::MatrixXd::Identity(20, 20)).norm(), 0.0, 1e-9);
  EXPECT_THROW(generalized_symmetric_eig(A, -B), SolverError);
}

TEST(Eig, NonsymmetricReducesToKnownSpectrum) {
  // Similar to diag(1,2,3) through a mass-weighted transform.
  Eigen::MatrixXd M = Eigen::Vector3d(1, 2, 4).asDiagonal();
  Eigen::MatrixXd K = M * Eigen::Vector3d(1, 2, 3).asDiagonal();
  K(0, 1) = 0.5;  // upper-triangular perturbation keeps eigenvalues
  const auto r = generalized_nonsymmetric_eig(K, M);
  std::vector<double> ev;
  for (int i = 0; i < 3; ++i) ev.push_back(r.values[i].real());
  std::sort(ev.begin(), ev.end());
  EXPECT_NEAR(ev[0], 1.0, 1e-12);
  EXPECT_NEAR(ev[1], 2.0, 1e-12);
  EXPECT_NEAR(ev[2], 3.0, 1e-12);
  for (int k = 0; k < 3; ++k) {
    const Eigen::VectorXcd v = r.vectors.col(k);
    EXPECT_LE((K.cast<std::complex<double>>() * v - r.values[k] * M.cast<std::complex<double>>() * v).norm(),
              1e-10 * v.norm());
  }
}

TEST(Cond, Identity) { EXPECT_NEAR(condition_number(Eigen::MatrixXd::Identity(4, 4)), 1.0, 1e-14); }

TEST(Cond, Diagonal) {
  EXPECT_NEAR(condition_number(Eigen::MatrixXd(Eigen::Vector2d(1, 1e6).asDiagonal())), 1e6, 1e-6);
}

TEST(Cond, RandomOrthogonal) {
  std::mt19937 rng(2);
  std::normal_distribution<double> N;
  Eigen::MatrixXd X(30, 30);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) X(i, j) = N(rng);
  const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(X).householderQ();
  EXPECT_NEAR(condition_number(Q), 1.0, 1e-9);
}

TEST(Cond, TooLarge) {
  SparseMatrix big(kDenseLimit + 1, kDenseLimit + 1);
  EXPECT_THROW(condition_number(big), CapabilityError);
}
