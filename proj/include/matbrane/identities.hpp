#pragma once

// Block-matrix trace identities of the quadratic and quartic action, checked
// against direct evaluation of the traces. Random inputs are seeded so that
// every reported counterexample can be regenerated.

#include <array>
#include <cstdint>
#include <optional>
#include <random>

#include "matbrane/background.hpp"
#include "matbrane/spectrum.hpp"

namespace matbrane {

enum class Verdict { exact, pass, fail, recorded };

inline const char* to_string(Verdict v)
{
  switch (v) {
  case Verdict::exact: return "exact";
  case Verdict::pass: return "pass";
  case Verdict::fail: return "fail";
  case Verdict::recorded: return "recorded";
  }
  return "?";
}

template <typename Scalar>
using Triple = std::array<CMatrix<Scalar>, 3>;

/// Independent standard-normal real and imaginary parts.
template <typename Scalar = double>
CMatrix<Scalar> random_complex(Eigen::Index n, std::mt19937_64& rng)
{
  std::normal_distribution<Scalar> normal(0, 1);
  CMatrix<Scalar> m(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      const Scalar re = normal(rng);
      const Scalar im = normal(rng);
      m(r, c) = {re, im};
    }
  return m;
}

template <typename Scalar = double>
CMatrix<Scalar> random_hermitian(Eigen::Index n, std::mt19937_64& rng)
{
  const CMatrix<Scalar> g = random_complex<Scalar>(n, rng);
  return (g + g.adjoint()) / Scalar(2);
}

template <typename Derived1, typename Derived2>
auto trace_product(const Eigen::MatrixBase<Derived1>& x, const Eigen::MatrixBase<Derived2>& y)
{
  return (x.transpose().cwiseProduct(y)).sum();
}

template <typename Scalar>
struct ExpansionReport {
  Complex<Scalar> lhs;
  Complex<Scalar> rhs;
  std::array<Complex<Scalar>, 6> terms;
  Scalar residual;  // |lhs - rhs| / max(1, sum |terms|)
};

/// Both sides of the expansion of sum_{i,j} Tr [X_i + A_i, X_j + A_j]^2 into
/// background, cross and fluctuation terms.
template <typename Scalar>
ExpansionReport<Scalar> check_expansion(const Triple<Scalar>& x, const Triple<Scalar>& a)
{
  const auto n = x[0].rows();
  for (int k = 0; k < 3; ++k)
    if (x[k].rows() != n || x[k].cols() != n || a[k].rows() != n || a[k].cols() != n)
      throw InvalidArgument("check_expansion: all six matrices must share one square shape");

  ExpansionReport<Scalar> rep{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const CMatrix<Scalar> full = commutator(CMatrix<Scalar>(x[i] + a[i]), CMatrix<Scalar>(x[j] + a[j]));
      const CMatrix<Scalar> xx = commutator(x[i], x[j]);
      const CMatrix<Scalar> xa = commutator(x[i], a[j]);
      const CMatrix<Scalar> ax = commutator(a[i], x[j]);
      const CMatrix<Scalar> aa = commutator(a[i], a[j]);
      rep.lhs += trace_product(full, full);
      rep.terms[0] += trace_product(xx, xx);
      rep.terms[1] += Scalar(4) * trace_product(xx, xa);
      rep.terms[2] += Scalar(2) * trace_product(xx, aa);
      rep.terms[3] += Scalar(2) * trace_product(xa, CMatrix<Scalar>(xa + ax));
      rep.terms[4] += Scalar(4) * trace_product(xa, aa);
      rep.terms[5] += trace_product(aa, aa);
    }
  Scalar magnitude = 1;
  for (const auto& t : rep.terms) {
    rep.rhs += t;
    magnitude += std::abs(t);
  }
  rep.residual = std::abs(rep.lhs - rep.rhs) / magnitude;
  return rep;
}

/// Random block-diagonal Hermitian background and off-diagonal fluctuation of
/// total dimension 2n.
template <typename Scalar = double>
std::pair<Triple<Scalar>, Triple<Scalar>> random_expansion_instance(Eigen::Index n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  Triple<Scalar> x, a;
  for (int k = 0; k < 3; ++k) {
    const CMatrix<Scalar> up = random_hermitian<Scalar>(n, rng);
    const CMatrix<Scalar> lo = random_hermitian<Scalar>(n, rng);
    x[k] = block_diag(up, lo);
  }
  for (int k = 0; k < 3; ++k) a[k] = off_diagonal(random_complex<Scalar>(n, rng));
  return {x, a};
}

/// sum_{i,j} Tr [A_i, A_j]^2 with A_i = [[0, T_i], [T_i^dag, 0]], traced directly.
template <typename Scalar>
Scalar quartic_block_trace(const Triple<Scalar>& t)
{
  Triple<Scalar> a;
  for (int k = 0; k < 3; ++k) a[k] = off_diagonal(t[k]);
  Complex<Scalar> sum = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const CMatrix<Scalar> c = commutator(a[i], a[j]);
      sum += trace_product(c, c);
    }
  return sum.real();
}

/// 4 sum_{i<j} Tr (T_i T_j^dag - T_j T_i^dag)^2
template <typename Scalar>
Scalar quartic_commutator_form(const Triple<Scalar>& t)
{
  Complex<Scalar> sum = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const CMatrix<Scalar> m = t[i] * t[j].adjoint() - t[j] * t[i].adjoint();
      sum += trace_product(m, m);
    }
  return Scalar(4) * sum.real();
}

template <typename Scalar>
Triple<Scalar> rotate_fields(const Triple<Scalar>& t)
{
  const auto u = rotation_U<Scalar>();
  Triple<Scalar> out;
  for (int r = 0; r < 3; ++r) {
    out[r] = CMatrix<Scalar>::Zero(t[0].rows(), t[0].cols());
    for (int c = 0; c < 3; ++c) out[r] += u(r, c) * t[c];
  }
  return out;
}

/// -4 Tr[(T~1^dag T~1 + T~2^dag T~2)^2 + 2 (T~1^dag T~3 - T~3^dag T~1)(T~2^dag T~3 - T~3^dag T~2)]
template <typename Scalar>
Scalar quartic_rotated_form(const Triple<Scalar>& t)
{
  const auto r = rotate_fields(t);
  const CMatrix<Scalar> density = r[0].adjoint() * r[0] + r[1].adjoint() * r[1];
  const CMatrix<Scalar> m13 = r[0].adjoint() * r[2] - r[2].adjoint() * r[0];
  const CMatrix<Scalar> m23 = r[1].adjoint() * r[2] - r[2].adjoint() * r[1];
  const Complex<Scalar> value = trace_product(density, density) + Scalar(2) * trace_product(m13, m23);
  return Scalar(-4) * value.real();
}

template <typename Scalar>
struct QuarticReport {
  std::optional<std::uint64_t> seed;
  Eigen::Index dim;
  Scalar lhs;                    // direct block trace
  Scalar rhs;                    // closed form under test
  Scalar residual;               // |lhs - rhs|
  Scalar flipped_residual;       // |lhs + rhs|: same form with opposite overall sign
  Scalar relative;               // residual / max(1, |lhs|, |rhs|)
  Scalar cross_form_difference;  // |commutator form - rotated form| on the same input
  Verdict verdict;
};

namespace detail {

template <typename Scalar>
void require_triple(const Triple<Scalar>& t, const char* where)
{
  const auto n = t[0].rows();
  for (const auto& m : t)
    if (m.rows() != n || m.cols() != n)
      throw InvalidArgument(std::string(where) + ": T blocks must share one square dimension");
}

template <typename Scalar>
QuarticReport<Scalar> quartic_report(const Triple<Scalar>& t, Scalar rhs, std::optional<std::uint64_t> seed,
                                     Scalar tolerance)
{
  const Scalar lhs = quartic_block_trace(t);
  const Scalar residual = std::abs(lhs - rhs);
  const Scalar relative = residual / std::max({Scalar(1), std::abs(lhs), std::abs(rhs)});
  const Scalar cross = std::abs(quartic_commutator_form(t) - quartic_rotated_form(t));
  return {seed, t[0].rows(), lhs, rhs, residual, std::abs(lhs + rhs), relative, cross,
          relative <= tolerance ? Verdict::pass : Verdict::recorded};
}

}  // namespace detail

template <typename Scalar>
QuarticReport<Scalar> check_quartic_T(const Triple<Scalar>& t, std::optional<std::uint64_t> seed = {},
                                      Scalar tolerance = Scalar(1e-10))
{
  detail::require_triple(t, "check_quartic_T");
  return detail::quartic_report(t, quartic_commutator_form(t), seed, tolerance);
}

template <typename Scalar>
QuarticReport<Scalar> check_quartic_Ttilde(const Triple<Scalar>& t, std::optional<std::uint64_t> seed = {},
                                           Scalar tolerance = Scalar(1e-10))
{
  detail::require_triple(t, "check_quartic_Ttilde");
  return detail::quartic_report(t, quartic_rotated_form(t), seed, tolerance);
}

template <typename Scalar = double>
Triple<Scalar> random_fields(Eigen::Index n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  Triple<Scalar> t;
  for (auto& m : t) m = random_complex<Scalar>(n, rng);
  return t;
}

/// T_i = sum_k coeffs[i][k] Prel^k
template <typename Scalar>
OffDiagonalFluctuation<Scalar> momentum_fluctuation(const BraneBackground<Scalar>& bg,
                                                    const std::array<std::vector<Complex<Scalar>>, 3>& coeffs)
{
  const auto n = bg.N;
  const CMatrix<Scalar>& p = bg.Prel.matrix();
  std::array<CMatrix<Scalar>, 3> t;
  for (int i = 0; i < 3; ++i) {
    t[i] = CMatrix<Scalar>::Zero(n, n);
    CMatrix<Scalar> power = CMatrix<Scalar>::Identity(n, n);
    for (const auto& c : coeffs[i]) {
      t[i] += c * power;
      power = power * p;
    }
  }
  return OffDiagonalFluctuation<Scalar>(std::move(t));
}

template <typename Scalar = double>
OffDiagonalFluctuation<Scalar> random_fluctuation(Eigen::Index n, std::uint64_t seed)
{
  return OffDiagonalFluctuation<Scalar>(random_fields<Scalar>(n, seed));
}

template <typename Scalar>
struct CrossTermReport {
  Scalar background_cross;   // max_{i,j} |Tr [X_i, X_j][X_i, A_j]|
  Scalar fluctuation_cross;  // max_{i,j} |Tr [X_i, A_j][A_i, A_j]|
  Scalar scale;              // magnitude of the traced factors, for relative reading
};

template <typename Scalar>
CrossTermReport<Scalar> check_cross_terms(const Triple<Scalar>& x, const Triple<Scalar>& a)
{
  CrossTermReport<Scalar> rep{0, 0, 1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const CMatrix<Scalar> xx = commutator(x[i], x[j]);
      const CMatrix<Scalar> xa = commutator(x[i], a[j]);
      const CMatrix<Scalar> aa = commutator(a[i], a[j]);
      rep.background_cross = std::max(rep.background_cross, std::abs(trace_product(xx, xa)));
      rep.fluctuation_cross = std::max(rep.fluctuation_cross, std::abs(trace_product(xa, aa)));
      rep.scale = std::max({rep.scale, xx.norm() * xa.norm(), xa.norm() * aa.norm()});
    }
  return rep;
}

template <typename Scalar>
CrossTermReport<Scalar> check_cross_terms(const BraneBackground<Scalar>& bg, const OffDiagonalFluctuation<Scalar>& fl)
{
  if (fl.dim() != bg.N)
    throw InvalidArgument("check_cross_terms: fluctuation dimension must match the background truncation");
  Triple<Scalar> x, a;
  for (int k = 0; k < 3; ++k) {
    x[k] = bg.X[k].matrix();
    a[k] = fl.embedded(k);
  }
  return check_cross_terms(x, a);
}

}  // namespace matbrane
