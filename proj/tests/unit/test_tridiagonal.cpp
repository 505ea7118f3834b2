#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "fpconvex/random.hpp"
#include "fpconvex/tridiagonal.hpp"

namespace {

using namespace fpconvex;
using Eigen::VectorXd;

struct RandomTridiagonal {
  VectorXd diag, off;
};

RandomTridiagonal make(Rng& rng, int n) {
  RandomTridiagonal t{VectorXd(n), VectorXd(n - 1)};
  for (int i = 0; i < n; ++i) t.diag[i] = rng.uniform(-2.0, 5.0);
  for (int i = 0; i < n - 1; ++i) t.off[i] = rng.uniform(-2.0, 2.0);
  return t;
}

Eigen::MatrixXd dense(const RandomTridiagonal& t) { return TridiagonalMatrix{t.diag, t.off, 1.0}.dense(); }

TEST(Tridiagonal, SturmCountMatchesEigenvalues) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = make(rng, 2 + trial % 15);
    const VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense(t)).eigenvalues();
    for (double x : {-3.0, 0.0, 1.0, 4.0}) {
      int expected = 0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) expected += ev[i] < x;
      EXPECT_EQ(sturm_count(t.diag, t.off, x), expected);
    }
  }
}

TEST(Tridiagonal, SmallestEigenvalueMatchesDenseSolver) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = make(rng, 2 + trial % 20);
    const double expected = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense(t)).eigenvalues().minCoeff();
    const EigenBracket b = smallest_eigenvalue(t.diag, t.off);
    EXPECT_LE(b.lower, expected + 1e-13);
    EXPECT_GE(b.upper, expected - 1e-13);
    EXPECT_NEAR(b.value(), expected, 1e-12);
  }
}

TEST(Tridiagonal, EigenvectorResidual) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = make(rng, 3 + trial % 10);
    const EigenBracket b = smallest_eigenvalue(t.diag, t.off);
    const VectorXd v = smallest_eigenvector(t.diag, t.off, b);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LE((dense(t) * v - b.value() * v).norm(), 1e-8);
  }
}

TEST(Tridiagonal, ThomasSolve) {
  Rng rng(4);
  RandomTridiagonal t = make(rng, 12);
  t.diag.array() += 10.0;  // diagonally dominant
  VectorXd rhs(12);
  for (int i = 0; i < 12; ++i) rhs[i] = rng.normal();
  const VectorXd x = thomas_solve(t.diag, t.off, rhs);
  EXPECT_LE((dense(t) * x - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Tridiagonal, ScaledApply) {
  const TridiagonalMatrix m{VectorXd::Constant(3, 2.0), VectorXd::Constant(2, -1.0), 4.0};
  const VectorXd v = VectorXd::Ones(3);
  const VectorXd out = m.apply(v);
  EXPECT_DOUBLE_EQ(out[0], 4.0);
  EXPECT_DOUBLE_EQ(out[1], 0.0);
  EXPECT_DOUBLE_EQ(out[2], 4.0);
  EXPECT_LE((m.dense() * v - out).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Tridiagonal, OneByOne) {
  VectorXd d(1);
  d << -3.5;
  const EigenBracket b = smallest_eigenvalue(d, VectorXd(0));
  EXPECT_NEAR(b.value(), -3.5, 1e-14);
}

}  // namespace
