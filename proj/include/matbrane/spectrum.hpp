#pragma once

// Quadratic mass operator of the off-diagonal fluctuations, assembled in the
// (T1, T2, T3) basis from the canonical pair and in the rotated basis from the
// Bogoliubov operator, together with the closed-form per-level spectrum and a
// trust-windowed dense eigensolve that reconciles the two.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "matbrane/background.hpp"

namespace matbrane {

enum class Basis { t, t_tilde };

enum class Sector { offdiag_tachyon, offdiag_zero, offdiag_massive, transverse, fermion };

inline const char* to_string(Basis b) { return b == Basis::t ? "T" : "T~"; }

inline const char* to_string(Sector s)
{
  switch (s) {
  case Sector::offdiag_tachyon: return "offdiag-tachyon";
  case Sector::offdiag_zero: return "offdiag-zero";
  case Sector::offdiag_massive: return "offdiag-massive";
  case Sector::transverse: return "transverse";
  case Sector::fermion: return "fermion";
  }
  return "?";
}

/// 4 pi z2 R cos(theta): the natural energy^2 unit of the rotated operator.
template <typename Scalar>
Scalar mass_scale(Scalar theta, Scalar z2, Scalar R)
{
  return 4 * std::numbers::pi_v<Scalar> * z2 * R * std::cos(theta);
}

template <typename Scalar = double>
using Matrix3c = Eigen::Matrix<Complex<Scalar>, 3, 3>;

/// Maps (T1, T2, T3) to the rotated fields (T~1, T~2, T~3).
template <typename Scalar = double>
Matrix3c<Scalar> rotation_U()
{
  const Scalar r = 1 / std::sqrt(Scalar(2));
  const Complex<Scalar> i(0, 1);
  Matrix3c<Scalar> u;
  u << r, -i * r, 0,
      -r, -i * r, 0,
      0, 0, 1;
  return u;
}

/// U (x) I_n acting on the component-major (T1, T2, T3) (x) Fock ordering.
template <typename Scalar>
CMatrix<Scalar> lift_rotation(const Matrix3c<Scalar>& u, Eigen::Index n)
{
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(3 * n, 3 * n);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (u(r, c) != Complex<Scalar>(0))
        out.block(r * n, c * n, n, n).diagonal().setConstant(u(r, c));
  return out;
}

template <typename Scalar = double>
struct MassOperator {
  Basis basis;
  Scalar theta;
  Scalar z2;
  Scalar R;
  Eigen::Index N;
  Scalar scale;
  CMatrix<Scalar> matrix;
  // diag(A^dag A, A^dag A + 2, A^dag A + 1) in the rotated basis: commutes with
  // the mass operator and labels each eigenvector by its level n.
  CMatrix<Scalar> level;

  Scalar hermiticity_residual() const { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff(); }
};

namespace detail {

template <typename Scalar>
CMatrix<Scalar> assemble3(const std::array<std::array<const CMatrix<Scalar>*, 3>, 3>& blocks, Eigen::Index n)
{
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(3 * n, 3 * n);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (blocks[r][c] != nullptr)
        out.block(r * n, c * n, n, n) = *blocks[r][c];
  return out;
}

template <typename Scalar>
CMatrix<Scalar> rotated_level_operator(const CMatrix<Scalar>& a)
{
  const auto n = a.rows();
  const CMatrix<Scalar> num = a.adjoint() * a;
  const CMatrix<Scalar> id = CMatrix<Scalar>::Identity(n, n);
  const CMatrix<Scalar> l1 = num;
  const CMatrix<Scalar> l2 = num + 2 * id;
  const CMatrix<Scalar> l3 = num + id;
  return assemble3<Scalar>({{{&l1, nullptr, nullptr}, {nullptr, &l2, nullptr}, {nullptr, nullptr, &l3}}}, n);
}

}  // namespace detail

/// Mass operator in the rotated basis:
///   scale * [[A^dag A - 1, A^dag A^dag, 0], [A A, A^dag A + 2, 0], [0, 0, 2 A^dag A + 1]].
template <typename Scalar>
MassOperator<Scalar> build_mass_operator_fock(const BraneBackground<Scalar>& bg)
{
  const auto n = bg.N;
  const CMatrix<Scalar> a = bogoliubov(n, bg.theta, bg.guard).matrix();
  const CMatrix<Scalar> ad = a.adjoint();
  const CMatrix<Scalar> id = CMatrix<Scalar>::Identity(n, n);
  const CMatrix<Scalar> num = ad * a;

  const CMatrix<Scalar> b11 = num - id;
  const CMatrix<Scalar> b12 = ad * ad;
  const CMatrix<Scalar> b21 = a * a;
  const CMatrix<Scalar> b22 = num + 2 * id;
  const CMatrix<Scalar> b33 = 2 * num + id;

  const Scalar scale = mass_scale(bg.theta, bg.z2, bg.R);
  CMatrix<Scalar> m = scale * detail::assemble3<Scalar>(
                                  {{{&b11, &b12, nullptr}, {&b21, &b22, nullptr}, {nullptr, nullptr, &b33}}}, n);
  return {Basis::t_tilde, bg.theta, bg.z2, bg.R, n, scale, std::move(m), detail::rotated_level_operator(a)};
}

/// Mass operator in the (T1, T2, T3) basis from the relative canonical pair
/// ([Q, P] = i hbar, hbar = 2 pi z2):
///   (4 pi z2 / hbar) R [[c^2 P^2, -c (PQ - i hbar), 0],
///                       [-c (QP + i hbar), Q^2, 0],
///                       [0, 0, c^2 P^2 + Q^2]],  c = cos(theta).
/// This is exactly (U (x) I)^dag M_fock (U (x) I) on the interior levels.
template <typename Scalar>
MassOperator<Scalar> build_mass_operator_qp(const BraneBackground<Scalar>& bg)
{
  const auto n = bg.N;
  const CMatrix<Scalar>& p = bg.Prel.matrix();
  const CMatrix<Scalar>& q = bg.Qrel.matrix();
  const CMatrix<Scalar> id = CMatrix<Scalar>::Identity(n, n);
  const Scalar c = std::cos(bg.theta);
  const Scalar hbar = 2 * std::numbers::pi_v<Scalar> * bg.z2;
  const Complex<Scalar> ihbar(0, hbar);

  const CMatrix<Scalar> pp = p * p;
  const CMatrix<Scalar> qq = q * q;
  const CMatrix<Scalar> b11 = c * c * pp;
  const CMatrix<Scalar> b12 = -c * (p * q - ihbar * id);
  const CMatrix<Scalar> b21 = -c * (q * p + ihbar * id);
  const CMatrix<Scalar> b33 = c * c * pp + qq;

  const Scalar prefactor = 4 * std::numbers::pi_v<Scalar> * bg.z2 / hbar * bg.R;
  CMatrix<Scalar> m = prefactor * detail::assemble3<Scalar>(
                                      {{{&b11, &b12, nullptr}, {&b21, &qq, nullptr}, {nullptr, nullptr, &b33}}}, n);

  const CMatrix<Scalar> w = lift_rotation(rotation_U<Scalar>(), n);
  const CMatrix<Scalar> a = bogoliubov(n, bg.theta, bg.guard).matrix();
  CMatrix<Scalar> level = w.adjoint() * detail::rotated_level_operator(a) * w;
  return {Basis::t, bg.theta, bg.z2, bg.R, n, mass_scale(bg.theta, bg.z2, bg.R), std::move(m), std::move(level)};
}

/// max |(W M_t W^dag - M_t~)| over interior rows/columns, divided by the scale.
template <typename Scalar>
Scalar route_equivalence_residual(const MassOperator<Scalar>& qp, const MassOperator<Scalar>& fock,
                                  Eigen::Index margin = 1)
{
  if (qp.basis != Basis::t || fock.basis != Basis::t_tilde || qp.N != fock.N)
    throw InvalidArgument("route_equivalence_residual: expects (T-basis, T~-basis) operators of equal N");
  const auto n = qp.N;
  const InteriorProjector proj(n, margin);
  const CMatrix<Scalar> w = lift_rotation(rotation_U<Scalar>(), n);
  const CMatrix<Scalar> diff = w * qp.matrix * w.adjoint() - fock.matrix;
  Scalar worst = 0;
  for (Eigen::Index r = 0; r < 3 * n; ++r) {
    if (!proj.keeps(r % n)) continue;
    for (Eigen::Index c = 0; c < 3 * n; ++c)
      if (proj.keeps(c % n)) worst = std::max(worst, std::abs(diff(r, c)));
  }
  return worst / std::abs(fock.scale);
}

enum class Component { alpha, beta, gamma };

/// Per-level 3x3 block acting on (alpha L_n, beta L_{n-2}, gamma L_{n-1}).
/// Rows/columns whose Fock function does not exist (n < 2) are dropped.
template <typename Scalar = double>
struct ReducedBlock {
  int n;
  Scalar scale;
  RMatrix<Scalar> units;  // in units of scale
  std::vector<Component> components;

  RMatrix<Scalar> raw() const { return scale * units; }
};

template <typename Scalar = double>
ReducedBlock<Scalar> reduced_block(int n, Scalar theta, Scalar z2, Scalar R)
{
  if (n < 0)
    throw InvalidArgument("reduced_block: level index must be nonnegative");
  const Scalar sn = static_cast<Scalar>(n);
  RMatrix<Scalar> full(3, 3);
  const Scalar off = n >= 1 ? std::sqrt(sn * (sn - 1)) : Scalar(0);
  full << sn - 1, off, 0,
      off, sn, 0,
      0, 0, 2 * sn - 1;

  std::vector<Component> comps{Component::alpha};
  if (n >= 2) comps.push_back(Component::beta);
  if (n >= 1) comps.push_back(Component::gamma);

  RMatrix<Scalar> kept(comps.size(), comps.size());
  for (std::size_t r = 0; r < comps.size(); ++r)
    for (std::size_t c = 0; c < comps.size(); ++c)
      kept(r, c) = full(static_cast<int>(comps[r]), static_cast<int>(comps[c]));
  return {n, mass_scale(theta, z2, R), std::move(kept), std::move(comps)};
}

/// One spectral line. eigenvalue_units is in units of 4 pi z2 R cos(theta),
/// eigenvalue_bare in units of 4 pi z2 R, eigenvalue_raw in energy^2.
template <typename Scalar = double>
struct ModeRecord {
  int n;
  Scalar eigenvalue_units;
  Scalar eigenvalue_bare;
  Scalar eigenvalue_raw;
  int multiplicity;
  Sector sector;
  std::vector<std::array<Scalar, 3>> coefficients;  // (alpha, beta, gamma) per eigenvector
  bool trusted = true;
};

namespace detail {

template <typename Scalar>
ModeRecord<Scalar> make_record(int n, Scalar units, int mult, Sector sector, Scalar theta, Scalar z2, Scalar R,
                               std::vector<std::array<Scalar, 3>> coeffs = {})
{
  const Scalar c = std::cos(theta);
  return {n, units, units * c, units * mass_scale(theta, z2, R), mult, sector, std::move(coeffs), true};
}

}  // namespace detail

template <typename Scalar = double>
std::vector<ModeRecord<Scalar>> analytic_spectrum(int n_max, Scalar theta, Scalar z2, Scalar R)
{
  if (n_max < 0)
    throw InvalidArgument("analytic_spectrum: n_max must be nonnegative");
  std::vector<ModeRecord<Scalar>> out;
  for (int n = 0; n <= n_max; ++n) {
    const Scalar sn = static_cast<Scalar>(n);
    if (n == 0) {
      out.push_back(detail::make_record<Scalar>(0, -1, 1, Sector::offdiag_tachyon, theta, z2, R, {{1, 0, 0}}));
    } else if (n == 1) {
      out.push_back(detail::make_record<Scalar>(1, 0, 1, Sector::offdiag_zero, theta, z2, R, {{1, 0, 0}}));
      out.push_back(detail::make_record<Scalar>(1, 1, 1, Sector::offdiag_massive, theta, z2, R, {{0, 0, 1}}));
    } else {
      const std::array<Scalar, 3> v1{-std::sqrt(sn), std::sqrt(sn - 1), 0};
      const std::array<Scalar, 3> v2{0, 0, std::sqrt(sn)};
      const std::array<Scalar, 3> v3{std::sqrt(sn * (sn - 1)), sn, 0};
      out.push_back(detail::make_record<Scalar>(n, 0, 1, Sector::offdiag_zero, theta, z2, R, {v1}));
      out.push_back(detail::make_record<Scalar>(n, 2 * sn - 1, 2, Sector::offdiag_massive, theta, z2, R, {v2, v3}));
    }
  }
  return out;
}

/// Eigenvalues (units) of level n, with multiplicity, ascending.
template <typename Scalar = double>
std::vector<Scalar> level_values(int n)
{
  if (n == 0) return {-1};
  if (n == 1) return {0, 1};
  const Scalar v = 2 * static_cast<Scalar>(n) - 1;
  return {0, v, v};
}

template <typename Scalar = double>
std::vector<ModeRecord<Scalar>> transverse_spectrum(int n_max, Scalar theta, Scalar z2 = 1, Scalar R = 1)
{
  if (n_max < 0)
    throw InvalidArgument("transverse_spectrum: n_max must be nonnegative");
  std::vector<ModeRecord<Scalar>> out;
  for (int n = 0; n <= n_max; ++n)
    out.push_back(detail::make_record<Scalar>(n, 2 * Scalar(n) + 1, 6, Sector::transverse, theta, z2, R));
  return out;
}

template <typename Scalar = double>
std::vector<ModeRecord<Scalar>> fermion_spectrum(int n_max, Scalar theta, Scalar z2 = 1, Scalar R = 1)
{
  if (n_max < 0)
    throw InvalidArgument("fermion_spectrum: n_max must be nonnegative");
  std::vector<ModeRecord<Scalar>> out;
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(detail::make_record<Scalar>(n, 2 * Scalar(n) + 2, 4, Sector::fermion, theta, z2, R));
    out.push_back(detail::make_record<Scalar>(n, 2 * Scalar(n), 4, Sector::fermion, theta, z2, R));
  }
  return out;
}

struct TrustOptions {
  double top_mass_threshold = 1e-6;
  // eigenvalues closer than this (in units of the scale) are treated as one
  // degenerate cluster and resolved by the level operator
  double cluster_tolerance = 1e-6;
  double label_tolerance = 1e-3;
};

template <typename Scalar = double>
struct NumericMode {
  Scalar raw;
  Scalar units;
  Scalar top_mass;  // squared norm on the top k Fock levels of every component
  Scalar level;     // <v| L |v>
  int label;        // rounded level, -1 when not within label_tolerance of an integer
  bool trusted;
};

template <typename Scalar = double>
struct NumericSpectrum {
  Scalar scale;
  Eigen::Index margin;
  std::vector<NumericMode<Scalar>> modes;  // ascending in eigenvalue

  std::vector<NumericMode<Scalar>> trusted() const
  {
    std::vector<NumericMode<Scalar>> out;
    std::copy_if(modes.begin(), modes.end(), std::back_inserter(out), [](const auto& m) { return m.trusted; });
    return out;
  }
};

template <typename Scalar>
NumericSpectrum<Scalar> numeric_spectrum(const MassOperator<Scalar>& op, Eigen::Index margin = 4,
                                         const TrustOptions& opts = {})
{
  const auto n = op.N;
  if (margin < 0 || margin >= n)
    throw InvalidArgument("numeric_spectrum: margin must satisfy 0 <= k < N");
  const Scalar tol_herm = Scalar(1e-12) * std::max(Scalar(1), op.matrix.cwiseAbs().maxCoeff());
  if (op.hermiticity_residual() > tol_herm)
    throw InvalidArgument("numeric_spectrum: mass operator is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> solver(op.matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("numeric_spectrum: Hermitian eigensolver did not converge");

  const RVector<Scalar>& values = solver.eigenvalues();
  CMatrix<Scalar> vectors = solver.eigenvectors();
  const Scalar scale = std::abs(op.scale);
  const auto total = values.size();

  // Rotate each degenerate cluster onto eigenvectors of the level operator.
  for (Eigen::Index start = 0; start < total;) {
    Eigen::Index stop = start + 1;
    while (stop < total && values(stop) - values(stop - 1) <= opts.cluster_tolerance * scale) ++stop;
    const auto width = stop - start;
    if (width > 1) {
      const CMatrix<Scalar> block = vectors.middleCols(start, width);
      const CMatrix<Scalar> projected = block.adjoint() * op.level * block;
      Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> inner(CMatrix<Scalar>((projected + projected.adjoint()) / 2));
      if (inner.info() != Eigen::Success)
        throw std::runtime_error("numeric_spectrum: level resolution eigensolve failed");
      vectors.middleCols(start, width) = block * inner.eigenvectors();
    }
    start = stop;
  }

  NumericSpectrum<Scalar> out{scale, margin, {}};
  out.modes.reserve(total);
  for (Eigen::Index k = 0; k < total; ++k) {
    const auto v = vectors.col(k);
    Scalar top = 0;
    for (int comp = 0; comp < 3; ++comp) top += v.segment(comp * n + n - margin, margin).squaredNorm();
    const Scalar level = (v.adjoint() * op.level * v)(0, 0).real();
    const Scalar nearest = std::round(level);
    const int label = std::abs(level - nearest) <= opts.label_tolerance && nearest >= 0 ? static_cast<int>(nearest) : -1;
    out.modes.push_back({values(k), values(k) / op.scale, top, level, label, top < opts.top_mass_threshold});
  }
  return out;
}

template <typename Scalar = double>
struct SpectrumComparison {
  int horizon = -1;              // levels 0..horizon reproduced exactly, multiplicities included
  int trusted = 0;
  int unmatched = 0;             // trusted modes not within tolerance of their level's closed form
  int trusted_negative = 0;
  Scalar tachyon_units = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar max_error_units = 0;    // over matched trusted modes

  bool tachyon_ok(Scalar tol) const { return trusted_negative == 1 && std::abs(tachyon_units + 1) <= tol; }
  bool passed(Scalar tol, int min_horizon = 0) const
  {
    return unmatched == 0 && tachyon_ok(tol) && horizon >= min_horizon;
  }
};

/// Matches trusted numeric modes against the closed-form tower. `tolerance` is
/// in units of the scale.
template <typename Scalar>
SpectrumComparison<Scalar> compare_with_analytic(const NumericSpectrum<Scalar>& spec, Scalar tolerance = Scalar(1e-6))
{
  SpectrumComparison<Scalar> cmp;
  std::vector<std::vector<Scalar>> by_level;

  auto tower_nearest = [](Scalar u) {
    if (u < Scalar(-0.5)) return Scalar(-1);
    if (u < Scalar(0.5)) return Scalar(0);
    const Scalar odd = 2 * std::round((u - 1) / 2) + 1;
    return std::max(Scalar(1), odd);
  };

  for (const auto& m : spec.modes) {
    if (!m.trusted) continue;
    ++cmp.trusted;
    if (m.units < -tolerance) {
      ++cmp.trusted_negative;
      cmp.tachyon_units = m.units;
    }
    Scalar target;
    if (m.label >= 0) {
      const auto values = level_values<Scalar>(m.label);
      target = *std::min_element(values.begin(), values.end(), [&](Scalar x, Scalar y) {
        return std::abs(x - m.units) < std::abs(y - m.units);
      });
      if (static_cast<std::size_t>(m.label) >= by_level.size()) by_level.resize(m.label + 1);
      by_level[m.label].push_back(m.units);
    } else {
      target = tower_nearest(m.units);
    }
    const Scalar err = std::abs(m.units - target);
    if (err > tolerance)
      ++cmp.unmatched;
    else
      cmp.max_error_units = std::max(cmp.max_error_units, err);
  }

  for (std::size_t lvl = 0; lvl < by_level.size(); ++lvl) {
    auto got = by_level[lvl];
    std::sort(got.begin(), got.end());
    const auto want = level_values<Scalar>(static_cast<int>(lvl));
    if (got.size() != want.size()) break;
    bool same = true;
    for (std::size_t k = 0; k < got.size(); ++k) same = same && std::abs(got[k] - want[k]) <= tolerance;
    if (!same) break;
    cmp.horizon = static_cast<int>(lvl);
  }
  return cmp;
}

template <typename Scalar = double>
struct TransverseCheck {
  int trusted = 0;
  Scalar max_error = 0;  // |numeric - (2n+1) cos(theta)|
};

/// Eigenvalues of cos(theta) (2 A^dag A + 1) against (2n+1) cos(theta),
/// restricted to eigenvectors with top-k mass below `threshold`.
template <typename Scalar = double>
TransverseCheck<Scalar> transverse_numeric_check(Eigen::Index n, Scalar theta, Eigen::Index margin,
                                                 double threshold, AngleGuard<Scalar> guard = {})
{
  const CMatrix<Scalar> a = bogoliubov(n, theta, guard).matrix();
  const Scalar c = std::cos(theta);
  const CMatrix<Scalar> h = c * (2 * a.adjoint() * a + CMatrix<Scalar>::Identity(n, n));
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("transverse_numeric_check: eigensolver did not converge");
  TransverseCheck<Scalar> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (solver.eigenvectors().col(k).tail(margin).squaredNorm() >= threshold) continue;
    const Scalar u = solver.eigenvalues()(k) / c;
    const Scalar odd = std::max(Scalar(1), 2 * std::round((u - 1) / 2) + 1);
    out.max_error = std::max(out.max_error, std::abs(solver.eigenvalues()(k) - odd * c));
    ++out.trusted;
  }
  return out;
}

}  // namespace matbrane
