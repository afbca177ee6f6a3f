#pragma once

// Tachyon potential, its minimum, and the recombined geometry obtained by
// diagonalizing the condensed 2x2 coordinate blocks.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "matbrane/oscillator.hpp"

namespace matbrane {

/// Physical parameters of the condensation step. Unlike the background,
/// z2 = 0 is admitted here as the commutative limit.
template <typename Scalar = double>
struct CondensationParams {
  Scalar theta;
  Scalar z2 = 1;
  Scalar R = 1;
  AngleGuard<Scalar> guard = {};

  void validate(const char* where) const
  {
    guard.require(theta, where);
    if (!(z2 >= Scalar(0)) || !std::isfinite(z2))
      throw InvalidArgument(std::string(where) + ": z2 must be nonnegative and finite");
    if (!(R > Scalar(0)) || !std::isfinite(R))
      throw InvalidArgument(std::string(where) + ": R must be positive and finite");
  }

  /// |T_1^min| = |T_2^min| = sqrt(pi z2 cos(theta))
  Scalar offdiagonal() const { return std::sqrt(std::numbers::pi_v<Scalar> * z2 * std::cos(theta)); }
};

template <typename Scalar = double>
struct TachyonPotential {
  Scalar quad;   // -4 pi z2 R cos(theta)
  Scalar quart;  // R
  Scalar tmin;
  Scalar vmin;
};

template <typename Scalar>
TachyonPotential<Scalar> tachyon_potential(const CondensationParams<Scalar>& p)
{
  p.validate("tachyon_potential");
  const Scalar depth = 2 * std::numbers::pi_v<Scalar> * p.z2 * std::cos(p.theta);
  return {-4 * std::numbers::pi_v<Scalar> * p.z2 * p.R * std::cos(p.theta), p.R, std::sqrt(depth),
          -p.R * depth * depth};
}

template <typename Scalar>
Scalar potential_value(Scalar t, const CondensationParams<Scalar>& p)
{
  if (!(t >= Scalar(0)))
    throw InvalidArgument("potential_value: |T| must be nonnegative");
  const auto v = tachyon_potential(p);
  const Scalar t2 = t * t;
  return v.quad * t2 + v.quart * t2 * t2;
}

template <typename Scalar>
Scalar potential_derivative(Scalar t, const CondensationParams<Scalar>& p)
{
  const auto v = tachyon_potential(p);
  return 2 * v.quad * t + 4 * v.quart * t * t * t;
}

template <typename Scalar>
Scalar potential_curvature(Scalar t, const CondensationParams<Scalar>& p)
{
  const auto v = tachyon_potential(p);
  return 2 * v.quad + 12 * v.quart * t * t;
}

template <typename Scalar = double>
struct Minimum {
  Scalar tmin;
  Scalar vmin;
};

template <typename Scalar>
Minimum<Scalar> analytic_minimum(const CondensationParams<Scalar>& p)
{
  const auto v = tachyon_potential(p);
  return {v.tmin, v.vmin};
}

class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar = double>
struct NumericMinimum {
  Scalar t;
  Scalar golden;  // estimate before the Newton step
  int iterations;
};

/// Golden-section search on [0, 4 sqrt(2 pi z2)] down to an interval of width
/// `tol`, followed by one Newton step on the exact derivative.
template <typename Scalar>
NumericMinimum<Scalar> numeric_minimum(const CondensationParams<Scalar>& p, Scalar tol)
{
  p.validate("numeric_minimum");
  if (!(tol > Scalar(0)))
    throw InvalidArgument("numeric_minimum: tolerance must be positive");

  Scalar lo = 0;
  Scalar hi = 4 * std::sqrt(2 * std::numbers::pi_v<Scalar> * p.z2);
  if (hi == Scalar(0)) return {0, 0, 0};

  auto f = [&](Scalar t) { return potential_value(t, p); };
  const Scalar inv_phi = (std::sqrt(Scalar(5)) - 1) / 2;
  Scalar c = hi - inv_phi * (hi - lo);
  Scalar d = lo + inv_phi * (hi - lo);
  Scalar fc = f(c);
  Scalar fd = f(d);
  int it = 0;
  for (; hi - lo > tol && it < 500; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const Scalar golden = (lo + hi) / 2;

  const Scalar width = 4 * std::sqrt(2 * std::numbers::pi_v<Scalar> * p.z2);
  if (golden <= tol || golden >= width - tol)
    throw BracketError("numeric_minimum: search collapsed onto a bracket endpoint at t=" +
                       std::to_string(static_cast<double>(golden)));

  const Scalar curvature = potential_curvature(golden, p);
  if (!(curvature > Scalar(0)))
    throw BracketError("numeric_minimum: nonpositive curvature at the golden-section estimate");
  return {golden - potential_derivative(golden, p) / curvature, golden, it};
}

/// |V'(tmin)| divided by |quad| * tmin, the size of either term of V'.
template <typename Scalar>
Scalar stationarity_residual(const CondensationParams<Scalar>& p)
{
  const auto v = tachyon_potential(p);
  const Scalar scale = std::abs(2 * v.quad) * v.tmin;
  const Scalar d = std::abs(potential_derivative(v.tmin, p));
  return scale > 0 ? d / scale : d;
}

template <typename Scalar = double>
using Matrix2c = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar = double>
struct CondensedBlocks {
  Scalar x0;
  Matrix2c<Scalar> M1;  // real symmetric
  Matrix2c<Scalar> M2;  // Hermitian, imaginary off-diagonal
};

template <typename Scalar>
CondensedBlocks<Scalar> condensed_blocks(Scalar x0, const CondensationParams<Scalar>& p)
{
  p.validate("condensed_blocks");
  const Scalar s = std::sin(p.theta);
  const Scalar c = std::cos(p.theta);
  const Scalar t = std::sqrt(Scalar(2)) / 2 * std::sqrt(2 * std::numbers::pi_v<Scalar> * p.z2 * c);
  const Complex<Scalar> i(0, 1);
  Matrix2c<Scalar> m1, m2;
  m1 << x0 * s, t,
      t, x0 * s;
  m2 << x0 * c, i * t,
      -i * t, -x0 * c;
  return {x0, m1, m2};
}

enum class Branch { minus, plus };

inline const char* to_string(Branch b) { return b == Branch::minus ? "minus" : "plus"; }

inline int sign_of(Branch b) { return b == Branch::minus ? -1 : 1; }

template <typename Scalar = double>
struct BranchPair {
  Scalar minus;
  Scalar plus;
  Scalar operator[](Branch b) const { return b == Branch::minus ? minus : plus; }
};

template <typename Scalar = double>
struct Recombined {
  BranchPair<Scalar> x;          // x0 sin(theta) -+ sqrt(pi z2 cos(theta))
  BranchPair<Scalar> y;          // -+ sqrt(x0^2 cos^2(theta) + pi z2 cos(theta))
  BranchPair<Scalar> x_numeric;  // ascending eigenvalues of M1
  BranchPair<Scalar> y_numeric;  // ascending eigenvalues of M2
  Scalar route_difference() const
  {
    return std::max({std::abs(x.minus - x_numeric.minus), std::abs(x.plus - x_numeric.plus),
                     std::abs(y.minus - y_numeric.minus), std::abs(y.plus - y_numeric.plus)});
  }
};

template <typename Scalar>
Recombined<Scalar> recombined_eigenvalues(Scalar x0, const CondensationParams<Scalar>& p)
{
  const auto blocks = condensed_blocks(x0, p);
  const Scalar s = std::sin(p.theta);
  const Scalar c = std::cos(p.theta);
  const Scalar t = p.offdiagonal();
  const Scalar r = std::sqrt(x0 * x0 * c * c + t * t);

  Eigen::SelfAdjointEigenSolver<Matrix2c<Scalar>> e1(blocks.M1, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix2c<Scalar>> e2(blocks.M2, Eigen::EigenvaluesOnly);
  return {{x0 * s - t, x0 * s + t},
          {-r, r},
          {e1.eigenvalues()(0), e1.eigenvalues()(1)},
          {e2.eigenvalues()(0), e2.eigenvalues()(1)}};
}

/// |(x_d - b t)^2 - tan^2(theta) (y_d^2 - t^2)| with b = -1 (minus) or +1
/// (plus) and t = sqrt(pi z2 cos(theta)); zero on the matching branch.
template <typename Scalar>
Scalar hyperbola_residual(Scalar x_d, Scalar y_d, const CondensationParams<Scalar>& p, Branch branch)
{
  p.validate("hyperbola_residual");
  const Scalar t = p.offdiagonal();
  const Scalar tan_theta = std::tan(p.theta);
  const Scalar shifted = x_d - sign_of(branch) * t;
  return std::abs(shifted * shifted - tan_theta * tan_theta * (y_d * y_d - t * t));
}

template <typename Scalar = double>
struct CurvePoint {
  Scalar x0;
  Branch branch;
  Scalar x_d;
  Scalar y_d;
  Scalar residual;
};

template <typename Scalar = double>
struct AsymptotePoint {
  Scalar x0;
  Branch branch;  // minus: x_d = -tan(theta) y_d, plus: x_d = +tan(theta) y_d
  Scalar x_d;
  Scalar y_d;
};

template <typename Scalar = double>
struct RecombinationCurve {
  CondensationParams<Scalar> params;
  std::vector<Scalar> grid;
  std::vector<CurvePoint<Scalar>> points;  // per grid point: minus, then plus
  std::vector<AsymptotePoint<Scalar>> asymptotes;

  Scalar max_residual() const
  {
    Scalar r = 0;
    for (const auto& pt : points) r = std::max(r, pt.residual);
    return r;
  }

  const CurvePoint<Scalar>& at(std::size_t grid_index, Branch b) const
  {
    return points.at(2 * grid_index + (b == Branch::minus ? 0 : 1));
  }
};

/// Samples both recombined branches over a uniform x0 grid. The eigenpairs of
/// each 2x2 block are followed by eigenvector overlap from one grid point to
/// the next, so branches stay continuous through (near-)degenerate points.
template <typename Scalar>
RecombinationCurve<Scalar> sample_curve(Scalar x0_min, Scalar x0_max, int n_points, const CondensationParams<Scalar>& p)
{
  p.validate("sample_curve");
  if (n_points < 2)
    throw InvalidArgument("sample_curve: need at least 2 grid points");
  if (!(x0_min < x0_max) || !std::isfinite(x0_min) || !std::isfinite(x0_max))
    throw InvalidArgument("sample_curve: grid requires finite x0_min < x0_max");

  RecombinationCurve<Scalar> curve{p, {}, {}, {}};
  const Scalar s = std::sin(p.theta);
  const Scalar c = std::cos(p.theta);

  using Vec2 = Eigen::Matrix<Complex<Scalar>, 2, 1>;
  // previous eigenvectors for (minus, plus) of M1 and M2
  std::array<Vec2, 2> prev1, prev2;
  bool first = true;

  auto track = [&](const Matrix2c<Scalar>& m, std::array<Vec2, 2>& prev) {
    Eigen::SelfAdjointEigenSolver<Matrix2c<Scalar>> es(m);
    std::array<Scalar, 2> vals{es.eigenvalues()(0), es.eigenvalues()(1)};
    std::array<Vec2, 2> vecs{es.eigenvectors().col(0), es.eigenvectors().col(1)};
    if (!first) {
      const Scalar keep = std::abs(prev[0].dot(vecs[0])) + std::abs(prev[1].dot(vecs[1]));
      const Scalar swap = std::abs(prev[0].dot(vecs[1])) + std::abs(prev[1].dot(vecs[0]));
      if (swap > keep) {
        std::swap(vals[0], vals[1]);
        std::swap(vecs[0], vecs[1]);
      }
    }
    prev = vecs;
    return vals;
  };

  for (int k = 0; k < n_points; ++k) {
    const Scalar x0 = k == n_points - 1 ? x0_max : x0_min + (x0_max - x0_min) * Scalar(k) / Scalar(n_points - 1);
    curve.grid.push_back(x0);
    const auto blocks = condensed_blocks(x0, p);
    const auto xs = track(blocks.M1, prev1);
    const auto ys = track(blocks.M2, prev2);
    first = false;
    for (int b = 0; b < 2; ++b) {
      const Branch br = b == 0 ? Branch::minus : Branch::plus;
      curve.points.push_back({x0, br, xs[b], ys[b], hyperbola_residual(xs[b], ys[b], p, br)});
    }
    curve.asymptotes.push_back({x0, Branch::minus, x0 * s, -x0 * c});
    curve.asymptotes.push_back({x0, Branch::plus, x0 * s, x0 * c});
  }
  return curve;
}

/// Mirror test of each branch under (x_d -> -x_d, x0 -> -x0): the smallest
/// |x_d(x0) + x_d(-x0)| over a grid symmetric about zero. Zero for a curve
/// that is mirror symmetric.
template <typename Scalar>
Scalar asymmetry_gap(const RecombinationCurve<Scalar>& curve)
{
  const auto n = curve.grid.size();
  const Scalar span = std::abs(curve.grid.front()) + std::abs(curve.grid.back());
  if (std::abs(curve.grid.front() + curve.grid.back()) > Scalar(1e-12) * span)
    throw InvalidArgument("asymmetry_gap: grid must be symmetric about x0 = 0");
  Scalar gap = std::numeric_limits<Scalar>::infinity();
  for (std::size_t k = 0; k < n; ++k)
    for (Branch b : {Branch::minus, Branch::plus})
      gap = std::min(gap, std::abs(curve.at(k, b).x_d + curve.at(n - 1 - k, b).x_d));
  return gap;
}

/// Largest distance (max of |dx_d|, |dy_d|) between each branch point and its
/// asymptote point at the same x0.
template <typename Scalar>
Scalar asymptote_deviation(const RecombinationCurve<Scalar>& curve)
{
  Scalar worst = 0;
  for (std::size_t k = 0; k < curve.grid.size(); ++k) {
    const auto& am = curve.asymptotes[2 * k];
    const auto& ap = curve.asymptotes[2 * k + 1];
    for (Branch b : {Branch::minus, Branch::plus}) {
      const auto& pt = curve.at(k, b);
      // each branch approaches whichever asymptote line it is closer to
      const Scalar dm = std::max(std::abs(pt.x_d - am.x_d), std::abs(pt.y_d - am.y_d));
      const Scalar dp = std::max(std::abs(pt.x_d - ap.x_d), std::abs(pt.y_d - ap.y_d));
      worst = std::max(worst, std::min(dm, dp));
    }
  }
  return worst;
}

}  // namespace matbrane
