#pragma once

// Truncated harmonic-oscillator algebra: ladder operators on the lowest N Fock
// levels, the canonical pair built from them, and the angle-dependent
// Bogoliubov mix. All relations that hold exactly in infinite dimensions hold
// here on the interior levels; the top levels carry the cutoff artifacts.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace matbrane {

class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense operator on an N-level Fock truncation. The invariants (square,
/// dim >= 2, finite entries) are checked once at construction; afterwards the
/// value is immutable.
template <typename Scalar>
class TruncatedOperator {
public:
  using Matrix = CMatrix<Scalar>;

  explicit TruncatedOperator(Matrix entries) : entries_(std::move(entries))
  {
    if (entries_.rows() != entries_.cols())
      throw InvalidArgument("TruncatedOperator: matrix must be square");
    if (entries_.rows() < 2)
      throw InvalidArgument("TruncatedOperator: dimension must be >= 2");
    if (!entries_.allFinite())
      throw InvalidArgument("TruncatedOperator: non-finite entry");
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  Complex<Scalar> operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  TruncatedOperator adjoint() const { return TruncatedOperator(entries_.adjoint()); }

private:
  Matrix entries_;
};

/// Diagonal projector keeping levels 0..dim-1-margin.
class InteriorProjector {
public:
  InteriorProjector(Eigen::Index dim, Eigen::Index margin) : dim_(dim), margin_(margin)
  {
    if (margin < 0 || margin >= dim)
      throw InvalidArgument("InteriorProjector: margin must satisfy 0 <= k < dim");
  }

  Eigen::Index dim() const { return dim_; }
  Eigen::Index margin() const { return margin_; }
  Eigen::Index interior() const { return dim_ - margin_; }
  bool keeps(Eigen::Index level) const { return level < interior(); }

  template <typename Scalar>
  CMatrix<Scalar> apply(const CMatrix<Scalar>& m) const
  {
    CMatrix<Scalar> out = CMatrix<Scalar>::Zero(dim_, dim_);
    out.topLeftCorner(interior(), interior()) = m.topLeftCorner(interior(), interior());
    return out;
  }

private:
  Eigen::Index dim_;
  Eigen::Index margin_;
};

/// Largest |entry| of (m - value * I) restricted to the projector's interior.
template <typename Scalar>
Scalar interior_deviation(const CMatrix<Scalar>& m, Complex<Scalar> value,
                          const InteriorProjector& proj)
{
  const auto n = proj.interior();
  CMatrix<Scalar> d = m.topLeftCorner(n, n);
  d.diagonal().array() -= value;
  return d.cwiseAbs().maxCoeff();
}

template <typename Scalar = double>
struct Ladder {
  TruncatedOperator<Scalar> a;
  TruncatedOperator<Scalar> a_dag;
};

template <typename Scalar = double>
Ladder<Scalar> make_ladder(Eigen::Index n)
{
  if (n < 2)
    throw InvalidArgument("make_ladder: truncation N must be >= 2, got " + std::to_string(n));
  CMatrix<Scalar> a = CMatrix<Scalar>::Zero(n, n);
  for (Eigen::Index m = 1; m < n; ++m)
    a(m - 1, m) = std::sqrt(static_cast<Scalar>(m));
  TruncatedOperator<Scalar> lower(a);
  return {lower, lower.adjoint()};
}

template <typename Scalar = double>
struct CanonicalPair {
  TruncatedOperator<Scalar> Q;
  TruncatedOperator<Scalar> P;
};

/// Q = sqrt(pi z2) (a + a^dag), P = -i sqrt(pi z2) (a - a^dag), so that
/// [Q, P] = 2 pi i z2 on the interior.
template <typename Scalar = double>
CanonicalPair<Scalar> make_qp(Eigen::Index n, Scalar z2)
{
  if (!(z2 > Scalar(0)) || !std::isfinite(z2))
    throw InvalidArgument("make_qp: flux density z2 must be positive and finite");
  const auto ladder = make_ladder<Scalar>(n);
  const Scalar s = std::sqrt(std::numbers::pi_v<Scalar> * z2);
  const Complex<Scalar> i(0, 1);
  CMatrix<Scalar> q = s * (ladder.a.matrix() + ladder.a_dag.matrix());
  CMatrix<Scalar> p = -i * s * (ladder.a.matrix() - ladder.a_dag.matrix());
  return {TruncatedOperator<Scalar>(std::move(q)), TruncatedOperator<Scalar>(std::move(p))};
}

/// Admissible intersection angles are [0, pi/2 - epsilon].
template <typename Scalar = double>
struct AngleGuard {
  Scalar epsilon = Scalar(1e-3);

  bool admits(Scalar theta) const
  {
    return std::isfinite(theta) && theta >= Scalar(0) &&
           theta <= std::numbers::pi_v<Scalar> / 2 - epsilon;
  }

  void require(Scalar theta, const char* where) const
  {
    if (!(epsilon > Scalar(0)))
      throw InvalidArgument(std::string(where) + ": angle guard must be positive");
    if (!admits(theta))
      throw InvalidArgument(std::string(where) + ": theta=" + std::to_string(static_cast<double>(theta)) +
                            " outside [0, pi/2 - " + std::to_string(static_cast<double>(epsilon)) + "]");
  }
};

/// Coefficients of A = minus * a^dag + plus * a; plus^2 - minus^2 = 1.
template <typename Scalar>
struct BogoliubovCoefficients {
  Scalar minus;
  Scalar plus;
};

template <typename Scalar = double>
BogoliubovCoefficients<Scalar> bogoliubov_coefficients(Scalar theta, AngleGuard<Scalar> guard = {})
{
  guard.require(theta, "bogoliubov");
  const Scalar c = std::cos(theta);
  const Scalar denom = std::sqrt(4 * c);
  return {(1 - c) / denom, (1 + c) / denom};
}

template <typename Scalar = double>
TruncatedOperator<Scalar> bogoliubov(Eigen::Index n, Scalar theta, AngleGuard<Scalar> guard = {})
{
  const auto coef = bogoliubov_coefficients(theta, guard);
  const auto ladder = make_ladder<Scalar>(n);
  return TruncatedOperator<Scalar>(coef.minus * ladder.a_dag.matrix() + coef.plus * ladder.a.matrix());
}

template <typename Scalar>
TruncatedOperator<Scalar> commutator(const TruncatedOperator<Scalar>& x, const TruncatedOperator<Scalar>& y)
{
  if (x.dim() != y.dim())
    throw InvalidArgument("commutator: dimension mismatch");
  return TruncatedOperator<Scalar>(x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

template <typename Derived1, typename Derived2>
auto commutator(const Eigen::MatrixBase<Derived1>& x, const Eigen::MatrixBase<Derived2>& y)
{
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
    throw InvalidArgument("commutator: dimension mismatch");
  using Plain = typename Derived1::PlainObject;
  Plain out = x * y - y * x;
  return out;
}

}  // namespace matbrane
