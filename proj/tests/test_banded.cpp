#include <gtest/gtest.h>

#include <random>

#include "axmcf/banded.hpp"

using namespace axmcf;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

namespace {

TridiagonalSystem<double> random_dominant(int n, bool cyclic, std::mt19937& gen, bool symmetric = false) {
  std::uniform_real_distribution<double> u(-1, 1);
  TridiagonalSystem<double> A(n, cyclic);
  for (int i = 0; i < n; ++i) {
    A.lower(i) = u(gen);
    A.upper(i) = u(gen);
  }
  if (symmetric) {
    for (int i = 0; i < n; ++i) A.upper(i) = A.lower((i + 1) % n);
  }
  for (int i = 0; i < n; ++i) A.diag(i) = 2.5 + std::abs(u(gen));
  return A;
}

double rel_err(const Mat& x, const Mat& ref) { return (x - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Tridiag, Identity) {
  TridiagonalSystem<double> A(6, false);
  A.diag.setOnes();
  const Vec b = Vec::LinSpaced(6, -1, 4);
  EXPECT_EQ(Vec(solve_tridiag(A, b)), b);
}

TEST(Tridiag, HandSolved) {
  TridiagonalSystem<double> A(3, false);
  A.diag << 2, 2, 2;
  A.lower << 0, -1, -1;
  A.upper << -1, -1, 0;
  const Vec x = solve_tridiag(A, Vec::Unit(3, 0));
  EXPECT_NEAR(x(0), 0.75, 1e-15);
  EXPECT_NEAR(x(1), 0.5, 1e-15);
  EXPECT_NEAR(x(2), 0.25, 1e-15);
}

TEST(Tridiag, DenseOracle) {
  std::mt19937 gen(5);
  const auto A = random_dominant(200, false, gen);
  const Mat b = Mat::Random(200, 2);
  const Mat ref = A.to_dense().partialPivLu().solve(b);
  EXPECT_LT(rel_err(solve_tridiag(A, b), ref), 1e-10);
}

TEST(Tridiag, ResidualBound) {
  std::mt19937 gen(8);
  const auto A = random_dominant(300, false, gen);
  const Vec b = Vec::Random(300);
  const Vec x = solve_tridiag(A, b);
  const double lhs = (A.multiply(x) - b).cwiseAbs().maxCoeff();
  EXPECT_LE(lhs, 1e-12 * (A.inf_norm() * x.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff()));
}

TEST(Tridiag, SingularIsReported) {
  TridiagonalSystem<double> A(3, false);
  A.diag << 1, 1, 1;
  A.upper << 1, 1, 0;
  A.lower << 0, 1, 1;
  EXPECT_THROW(solve_tridiag(A, Vec::Ones(3)), SingularSystem);
}

TEST(Cyclic, IdentityWithZeroCorners) {
  TridiagonalSystem<double> A(5, true);
  A.diag.setOnes();
  const Vec b = Vec::LinSpaced(5, 1, 5);
  EXPECT_LT((Vec(solve_cyclic_tridiag(A, b)) - b).norm(), 1e-15);
}

TEST(Cyclic, RowSums) {
  TridiagonalSystem<double> A(4, true);
  A.diag.setConstant(3);
  A.lower.setConstant(-1);
  A.upper.setConstant(-1);
  const Vec x = solve_cyclic_tridiag(A, Vec::Ones(4));
  EXPECT_LT((x - Vec::Ones(4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Cyclic, SpdDenseOracle) {
  std::mt19937 gen(9);
  const auto A = random_dominant(512, true, gen, true);
  const Mat D = A.to_dense();
  ASSERT_LT((D - D.transpose()).norm(), 1e-15);
  const Mat b = Mat::Random(512, 2);
  EXPECT_LT(rel_err(solve_cyclic_tridiag(A, b), D.llt().solve(b)), 1e-10);
  EXPECT_GT(min_ldl_pivot(A), 0);
}

TEST(Cyclic, ReducesToPlainWithZeroCorners) {
  std::mt19937 gen(10);
  auto A = random_dominant(64, true, gen);
  A.lower(0) = 0;
  A.upper(63) = 0;
  auto B = A;
  B.cyclic = false;
  const Vec b = Vec::Random(64);
  EXPECT_LT(rel_err(solve_cyclic_tridiag(A, b), solve_tridiag(B, b)), 1e-14);
}

TEST(Cyclic, KnownSolutionIllConditioned) {
  // diag = 2 + eps gives condition number ~ n^2 / eps
  const int n = 256;
  TridiagonalSystem<double> A(n, true);
  A.diag.setConstant(2 + 1e-4);
  A.lower.setConstant(-1);
  A.upper.setConstant(-1);
  const double cond = (2 + 1e-4 + 2) / 1e-4;
  ASSERT_LE(cond, 1e8);
  const Vec x = Vec::Random(n);
  EXPECT_LT(rel_err(solve_cyclic_tridiag(A, A.multiply(x)), x), 1e-11);
}

TEST(LdlPivot, DetectsIndefinite) {
  TridiagonalSystem<double> A(6, true);
  A.diag.setConstant(1);
  A.lower.setConstant(-1);
  A.upper.setConstant(-1);
  EXPECT_LE(min_ldl_pivot(A), 0);
  A.diag.setConstant(2.1);
  EXPECT_GT(min_ldl_pivot(A), 0);
}

TEST(Block, Identity) {
  BlockTridiagonalSystem<double, 2> A(7, true);
  for (auto& d : A.diag) d.setIdentity();
  const Vec b = Vec::LinSpaced(14, -3, 3);
  EXPECT_LT((solve_block_tridiag(A, b) - b).norm(), 1e-15);
}

TEST(Block, DecoupledMatchesScalar) {
  std::mt19937 gen(12);
  for (bool cyclic : {false, true}) {
    const auto A1 = random_dominant(40, cyclic, gen);
    const auto A2 = random_dominant(40, cyclic, gen);
    BlockTridiagonalSystem<double, 2> B(40, cyclic);
    for (int i = 0; i < 40; ++i) {
      B.lower[i] << A1.lower(i), 0, 0, A2.lower(i);
      B.diag[i] << A1.diag(i), 0, 0, A2.diag(i);
      B.upper[i] << A1.upper(i), 0, 0, A2.upper(i);
    }
    const Vec b1 = Vec::Random(40), b2 = Vec::Random(40);
    Vec b(80);
    for (int i = 0; i < 40; ++i) b.segment<2>(2 * i) << b1(i), b2(i);
    const Vec x = solve_block_tridiag(B, b);
    const Vec x1 = solve(A1, b1), x2 = solve(A2, b2);
    for (int i = 0; i < 40; ++i) {
      EXPECT_NEAR(x(2 * i), x1(i), 1e-13);
      EXPECT_NEAR(x(2 * i + 1), x2(i), 1e-13);
    }
  }
}

TEST(Block, DenseOracle) {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> u(-1, 1);
  for (bool cyclic : {false, true}) {
    BlockTridiagonalSystem<double, 2> A(256, cyclic);
    for (int i = 0; i < 256; ++i) {
      for (auto* blk : {&A.lower[i], &A.upper[i], &A.diag[i]}) *blk << u(gen), u(gen), u(gen), u(gen);
      A.diag[i] += 5 * Eigen::Matrix2d::Identity();
    }
    const Vec b = Vec::Random(512);
    const Vec ref = A.to_dense().partialPivLu().solve(b);
    EXPECT_LT(rel_err(solve_block_tridiag(A, b), ref), 1e-10) << cyclic;
    EXPECT_LT(rel_err(A.multiply(ref), A.to_dense() * ref), 1e-14);
  }
}

TEST(Block, NeedsPivotingInsideBlocks) {
  BlockTridiagonalSystem<double, 2> A(5, true);
  for (int i = 0; i < 5; ++i) {
    A.diag[i] << 0, 3, 3, 0.5;
    A.lower[i] << 0.1, 0, 0, 0.1;
    A.upper[i] << 0.1, 0.2, 0, 0.1;
  }
  const Vec b = Vec::Random(10);
  EXPECT_LT(rel_err(solve_block_tridiag(A, b), A.to_dense().fullPivLu().solve(b)), 1e-12);
}

TEST(Block, SingularIsReported) {
  BlockTridiagonalSystem<double, 2> A(4, false);
  for (auto& d : A.diag) d << 1, 2, 2, 4;
  EXPECT_THROW(solve_block_tridiag(A, Vec(Vec::Ones(8))), SingularSystem);
  EXPECT_THROW(solve_block_tridiag(A, Vec(Vec::Ones(7))), InvalidParameter);
}
