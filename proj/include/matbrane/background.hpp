#pragma once

// Intersecting-brane background: three 2N x 2N block-diagonal Hermitian
// matrices built from one shared N-level canonical pair, plus the relative
// coordinates that drive the off-diagonal fluctuation operator.

#include <array>
#include <cmath>
#include <numbers>

#include "matbrane/oscillator.hpp"

namespace matbrane {

template <typename Derived1, typename Derived2>
auto block_diag(const Eigen::MatrixBase<Derived1>& upper, const Eigen::MatrixBase<Derived2>& lower)
{
  using Plain = typename Derived1::PlainObject;
  Plain out = Plain::Zero(upper.rows() + lower.rows(), upper.cols() + lower.cols());
  out.topLeftCorner(upper.rows(), upper.cols()) = upper;
  out.bottomRightCorner(lower.rows(), lower.cols()) = lower;
  return out;
}

/// [[0, T], [T^dag, 0]]
template <typename Derived>
auto off_diagonal(const Eigen::MatrixBase<Derived>& t)
{
  using Plain = typename Derived::PlainObject;
  const auto n = t.rows();
  Plain out = Plain::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = t;
  out.bottomLeftCorner(n, n) = t.adjoint();
  return out;
}

template <typename Scalar = double>
struct BraneBackground {
  Scalar theta;
  Scalar z2;
  Scalar R;
  Eigen::Index N;
  AngleGuard<Scalar> guard;
  // shared single-brane pair (P1 = P2 = P, Q1 = Q2 = Q as operators)
  TruncatedOperator<Scalar> P;
  TruncatedOperator<Scalar> Q;
  std::array<TruncatedOperator<Scalar>, 3> X;
  TruncatedOperator<Scalar> Prel;
  TruncatedOperator<Scalar> Qrel;

  const TruncatedOperator<Scalar>& X1() const { return X[0]; }
  const TruncatedOperator<Scalar>& X2() const { return X[1]; }
  const TruncatedOperator<Scalar>& X3() const { return X[2]; }
};

template <typename Scalar = double>
struct OffDiagonalFluctuation {
  std::array<CMatrix<Scalar>, 3> T;

  explicit OffDiagonalFluctuation(std::array<CMatrix<Scalar>, 3> t) : T(std::move(t))
  {
    const auto n = T[0].rows();
    for (const auto& block : T)
      if (block.rows() != n || block.cols() != n)
        throw InvalidArgument("OffDiagonalFluctuation: blocks must share one square dimension");
  }

  Eigen::Index dim() const { return T[0].rows(); }

  /// A_i = [[0, T_i], [T_i^dag, 0]]
  CMatrix<Scalar> embedded(int i) const { return off_diagonal(T.at(i)); }
};

template <typename Scalar = double>
BraneBackground<Scalar> build_background(Scalar theta, Scalar z2, Scalar R, Eigen::Index n,
                                         AngleGuard<Scalar> guard = {})
{
  guard.require(theta, "build_background");
  if (!(R > Scalar(0)) || !std::isfinite(R))
    throw InvalidArgument("build_background: R must be positive and finite");
  if (n < 4)
    throw InvalidArgument("build_background: truncation N must be >= 4, got " + std::to_string(n));

  const auto pair = make_qp<Scalar>(n, z2);
  const CMatrix<Scalar>& p = pair.P.matrix();
  const CMatrix<Scalar>& q = pair.Q.matrix();
  const Scalar s = std::sin(theta);
  const Scalar c = std::cos(theta);

  return BraneBackground<Scalar>{
      theta, z2, R, n, guard, pair.P, pair.Q,
      {TruncatedOperator<Scalar>(block_diag(CMatrix<Scalar>(p * s), CMatrix<Scalar>(p * s))),
       TruncatedOperator<Scalar>(block_diag(CMatrix<Scalar>(p * c), CMatrix<Scalar>(-p * c))),
       TruncatedOperator<Scalar>(block_diag(q, q))},
      pair.P, pair.Q};
}

template <typename Scalar>
struct BlockCommutator {
  int i;
  int j;
  Complex<Scalar> upper;  // proportionality constant of the upper block
  Complex<Scalar> lower;
  Scalar residual;        // max off-identity deviation over both blocks
};

template <typename Scalar>
struct BackgroundCommutatorReport {
  std::array<BlockCommutator<Scalar>, 3> pairs;  // (1,2), (1,3), (2,3)
  Scalar canonical_residual;                     // |[Qrel, Prel] - 2 pi i z2| on interior
  Complex<Scalar> squared_sum;                   // 2 * sum_{i<j} upper^2, per interior level
  Scalar max_residual() const
  {
    Scalar r = canonical_residual;
    for (const auto& p : pairs) r = std::max(r, p.residual);
    return r;
  }
};

template <typename Scalar>
BackgroundCommutatorReport<Scalar> check_background_commutators(const BraneBackground<Scalar>& bg)
{
  const auto n = bg.N;
  const InteriorProjector proj(n, 1);
  const auto inner = proj.interior();
  BackgroundCommutatorReport<Scalar> report{};
  const std::array<std::pair<int, int>, 3> index{{{0, 1}, {0, 2}, {1, 2}}};

  auto block_constant = [&](const CMatrix<Scalar>& block) {
    return block.topLeftCorner(inner, inner).diagonal().mean();
  };

  for (std::size_t k = 0; k < index.size(); ++k) {
    const auto [i, j] = index[k];
    const CMatrix<Scalar> c = commutator(bg.X[i].matrix(), bg.X[j].matrix());
    const CMatrix<Scalar> up = c.topLeftCorner(n, n);
    const CMatrix<Scalar> lo = c.bottomRightCorner(n, n);
    BlockCommutator<Scalar> entry{i + 1, j + 1, block_constant(up), block_constant(lo), 0};
    entry.residual = std::max({interior_deviation(up, entry.upper, proj),
                               interior_deviation(lo, entry.lower, proj),
                               c.topRightCorner(n, n).cwiseAbs().maxCoeff(),
                               c.bottomLeftCorner(n, n).cwiseAbs().maxCoeff()});
    report.pairs[k] = entry;
    report.squared_sum += Scalar(2) * entry.upper * entry.upper;
  }

  const CMatrix<Scalar> qp = commutator(bg.Qrel.matrix(), bg.Prel.matrix());
  report.canonical_residual =
      interior_deviation(qp, Complex<Scalar>(0, 2 * std::numbers::pi_v<Scalar> * bg.z2), proj);
  return report;
}

}  // namespace matbrane
