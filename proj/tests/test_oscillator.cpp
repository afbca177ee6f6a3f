#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "matbrane/oscillator.hpp"

using namespace matbrane;
using cd = std::complex<double>;

namespace {

// naive triple-loop product, independent of Eigen's kernels
CMatrix<double> naive_product(const CMatrix<double>& x, const CMatrix<double>& y)
{
  CMatrix<double> out = CMatrix<double>::Zero(x.rows(), y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      for (Eigen::Index k = 0; k < x.cols(); ++k) out(i, j) += x(i, k) * y(k, j);
  return out;
}

CMatrix<double> naive_commutator(const CMatrix<double>& x, const CMatrix<double>& y)
{
  return naive_product(x, y) - naive_product(y, x);
}

}  // namespace

TEST(Ladder, SmallestTruncation)
{
  const auto l = make_ladder(2);
  CMatrix<double> expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_EQ(l.a.matrix(), expected);
  EXPECT_EQ(l.a_dag.matrix(), expected.adjoint());
}

TEST(Ladder, CommutatorAtThreeLevels)
{
  const auto l = make_ladder(3);
  const auto c = commutator(l.a, l.a_dag).matrix();
  CMatrix<double> expected = CMatrix<double>::Zero(3, 3);
  expected.diagonal() << 1, 1, -2;
  EXPECT_LT((c - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((naive_commutator(l.a.matrix(), l.a_dag.matrix()) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Ladder, LowersLevelFourWithAmplitudeTwo)
{
  const auto l = make_ladder(8);
  CVector<double> e4 = CVector<double>::Zero(8);
  e4(4) = 1;
  CVector<double> out = l.a.matrix() * e4;
  EXPECT_DOUBLE_EQ(out(3).real(), 2.0);
  out(3) = 0;
  EXPECT_EQ(out.norm(), 0.0);
}

TEST(Ladder, RejectsDegenerateTruncation)
{
  EXPECT_THROW(make_ladder(1), InvalidArgument);
  EXPECT_THROW(make_ladder(0), InvalidArgument);
}

TEST(CanonicalPair, HermitianExactly)
{
  for (int n : {2, 5, 17}) {
    const auto qp = make_qp(n, 0.7);
    EXPECT_EQ(qp.Q.matrix(), qp.Q.matrix().adjoint());
    EXPECT_EQ(qp.P.matrix(), qp.P.matrix().adjoint());
  }
}

TEST(CanonicalPair, InteriorCommutatorIsTwoPiIZ2)
{
  for (int n = 3; n <= 30; ++n)
    for (double z2 : {1.0, 0.25, 3.5}) {
      const auto qp = make_qp(n, z2);
      const auto c = naive_commutator(qp.Q.matrix(), qp.P.matrix());
      EXPECT_LT(interior_deviation(c, cd(0, 2 * std::numbers::pi * z2), InteriorProjector(n, 1)), 1e-12)
          << "n=" << n << " z2=" << z2;
    }
}

TEST(CanonicalPair, TruncationCornerAtTwoLevels)
{
  const auto qp = make_qp(2, 1.0);
  const auto c = commutator(qp.Q, qp.P).matrix();
  EXPECT_NEAR(c(0, 0).imag(), 2 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(c(1, 1).imag(), -2 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(std::abs(c(0, 1)) + std::abs(c(1, 0)), 0.0, 1e-15);
}

TEST(CanonicalPair, QuarterFluxGivesHalfPiI)
{
  const auto qp = make_qp(10, 0.25);
  const auto c = commutator(qp.Q, qp.P).matrix();
  EXPECT_LT(interior_deviation(c, cd(0, 0.5 * std::numbers::pi), InteriorProjector(10, 1)), 1e-12);
}

TEST(CanonicalPair, RejectsNonpositiveFlux)
{
  EXPECT_THROW(make_qp(5, 0.0), InvalidArgument);
  EXPECT_THROW(make_qp(5, -1.0), InvalidArgument);
}

TEST(Bogoliubov, ZeroAngleIsIdentityMap)
{
  const auto A = bogoliubov(6, 0.0);
  EXPECT_LT((A.matrix() - make_ladder(6).a.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bogoliubov, CoefficientsAtSixtyDegrees)
{
  const auto c = bogoliubov_coefficients(std::numbers::pi / 3);
  EXPECT_NEAR(c.minus, 0.35355339059327373, 1e-15);
  EXPECT_NEAR(c.plus, 1.0606601717798212, 1e-15);
  EXPECT_NEAR(c.plus * c.plus - c.minus * c.minus, 1.0, 1e-15);
}

TEST(Bogoliubov, HyperbolicIdentityOnThousandAngles)
{
  std::mt19937_64 rng(7);
  const double eps = 1e-3;
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2 - eps);
  for (int k = 0; k < 1000; ++k) {
    const auto c = bogoliubov_coefficients(angle(rng));
    EXPECT_NEAR(c.plus * c.plus - c.minus * c.minus, 1.0, 1e-12);
  }
}

TEST(Bogoliubov, InteriorCommutatorIsIdentity)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2 - 1e-3);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = trial == 0 ? std::numbers::pi / 3 : angle(rng);
    const int n = trial == 0 ? 20 : 4 + trial;
    const auto A = bogoliubov(n, theta);
    const auto c = naive_commutator(A.matrix(), A.matrix().adjoint());
    EXPECT_LT(interior_deviation(c, cd(1, 0), InteriorProjector(n, 2)), 1e-12) << "theta=" << theta;
  }
}

TEST(Bogoliubov, GuardRejectsParallelLimit)
{
  EXPECT_THROW(bogoliubov(6, std::numbers::pi / 2), InvalidArgument);
  EXPECT_THROW(bogoliubov(6, std::numbers::pi / 2 - 5e-4), InvalidArgument);
  EXPECT_THROW(bogoliubov(6, -0.1), InvalidArgument);
  EXPECT_NO_THROW(bogoliubov(6, std::numbers::pi / 2 - 5e-4, AngleGuard<double>{1e-4}));
}

TEST(Commutator, SelfCommutatorVanishesAndTraceIsZero)
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n : {2, 5, 9}) {
    CMatrix<double> x(n, n), y(n, n);
    for (Eigen::Index i = 0; i < n * n; ++i) {
      x(i) = cd(g(rng), g(rng));
      y(i) = cd(g(rng), g(rng));
    }
    const TruncatedOperator<double> X(x), Y(y);
    EXPECT_EQ(commutator(X, X).matrix().cwiseAbs().maxCoeff(), 0.0);
    const auto c = commutator(X, Y).matrix();
    EXPECT_LT((c - naive_commutator(x, y)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(std::abs(c.trace()), 1e-12 * (1 + x.norm() * y.norm()));
  }
}

TEST(Commutator, RejectsDimensionMismatch)
{
  EXPECT_THROW(commutator(make_ladder(3).a, make_ladder(4).a), InvalidArgument);
}

TEST(TruncatedOperator, RejectsInvalidEntries)
{
  EXPECT_THROW(TruncatedOperator<double>(CMatrix<double>::Zero(1, 1)), InvalidArgument);
  EXPECT_THROW(TruncatedOperator<double>(CMatrix<double>::Zero(2, 3)), InvalidArgument);
  CMatrix<double> bad = CMatrix<double>::Zero(2, 2);
  bad(0, 1) = cd(std::numeric_limits<double>::quiet_NaN(), 0);
  EXPECT_THROW(TruncatedOperator<double>{bad}, InvalidArgument);
}

TEST(InteriorProjector, KeepsLowerLevels)
{
  const InteriorProjector p(5, 2);
  EXPECT_TRUE(p.keeps(2));
  EXPECT_FALSE(p.keeps(3));
  const auto m = p.apply<double>(CMatrix<double>::Ones(5, 5));
  EXPECT_EQ(m.sum(), cd(9, 0));
  EXPECT_THROW(InteriorProjector(5, 5), InvalidArgument);
  EXPECT_THROW(InteriorProjector(5, -1), InvalidArgument);
}

TEST(Templates, LongDoubleLadderAlgebra)
{
  const auto A = bogoliubov<long double>(12, 0.9L);
  const CMatrix<long double> c = A.matrix() * A.matrix().adjoint() - A.matrix().adjoint() * A.matrix();
  EXPECT_LT(static_cast<double>(interior_deviation(c, std::complex<long double>(1, 0), InteriorProjector(12, 2))),
            1e-15);
}
