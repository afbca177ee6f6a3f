#include "matbrane/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "matbrane/background.hpp"
#include "matbrane/condensation.hpp"
#include "matbrane/identities.hpp"
#include "matbrane/spectrum.hpp"

namespace matbrane {

namespace {

ReportParams params_of(const RunConfig& cfg) { return {cfg.theta, cfg.z2, cfg.R}; }

CondensationParams<double> condensation_params(const RunConfig& cfg)
{
  return {cfg.theta, cfg.z2, cfg.R, AngleGuard<double>{cfg.angle_guard}};
}

SpectrumRow analytic_row(const ModeRecord<double>& m)
{
  return {"analytic", to_string(m.sector), m.n, m.eigenvalue_units, m.eigenvalue_bare,
          m.eigenvalue_raw, m.multiplicity, m.trusted};
}

std::string verdict_within(double residual, double tol, Verdict ok, Verdict bad)
{
  return to_string(residual <= tol ? ok : bad);
}

}  // namespace

SpectrumReport make_spectrum_report(const RunConfig& cfg)
{
  const AngleGuard<double> guard{cfg.angle_guard};
  const auto bg = build_background(cfg.theta, cfg.z2, cfg.R, static_cast<Eigen::Index>(cfg.N), guard);
  const auto fock = build_mass_operator_fock(bg);
  const auto qp = build_mass_operator_qp(bg);
  TrustOptions trust;
  trust.top_mass_threshold = cfg.tol("trust");
  const double tol = cfg.tol("spectrum");

  const auto numeric = numeric_spectrum(fock, cfg.margin_k, trust);
  const auto cmp = compare_with_analytic(numeric, tol);
  const double route = route_equivalence_residual(qp, fock, 1);

  SpectrumReport rep{params_of(cfg), cfg.N, cfg.margin_k, fock.scale, {}, route, cmp.horizon, cmp.trusted,
                     cmp.unmatched, cmp.tachyon_units, cmp.max_error_units, false};

  for (const auto& m : analytic_spectrum(cfg.n_max, cfg.theta, cfg.z2, cfg.R)) rep.rows.push_back(analytic_row(m));
  for (const auto& m : numeric.modes) {
    Sector sector = Sector::offdiag_massive;
    if (m.units < -0.5) sector = Sector::offdiag_tachyon;
    else if (std::abs(m.units) <= tol) sector = Sector::offdiag_zero;
    rep.rows.push_back({"numeric", to_string(sector), m.label, m.units, m.units * std::cos(cfg.theta), m.raw, 1,
                        m.trusted});
  }
  for (const auto& m : transverse_spectrum(cfg.n_max, cfg.theta, cfg.z2, cfg.R)) rep.rows.push_back(analytic_row(m));
  for (const auto& m : fermion_spectrum(cfg.n_max, cfg.theta, cfg.z2, cfg.R)) rep.rows.push_back(analytic_row(m));

  rep.passed = cmp.passed(tol) && route <= cfg.tol("route");
  return rep;
}

IdentityReport make_identity_report(const RunConfig& cfg)
{
  IdentityReport rep{params_of(cfg), cfg.seed, {}, {}, true};
  const double tol_id = cfg.tol("identity");
  const double tol_exact = cfg.tol("exact");
  auto add = [&rep](std::string name, std::uint64_t seed, int dim, double lhs, double rhs, double residual,
                    std::string verdict) {
    if (verdict == "fail") rep.passed = false;
    rep.rows.push_back({std::move(name), seed, dim, lhs, rhs, residual, std::move(verdict)});
  };

  // Randomized block instances: block size cycles through 2..8.
  for (int k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
    const int n = 2 + k % 7;
    const auto [x, a] = random_expansion_instance<double>(n, seed);
    const auto exp = check_expansion(x, a);
    add("expansion", seed, n, exp.lhs.real(), exp.rhs.real(), exp.residual,
        verdict_within(exp.residual, tol_id, Verdict::exact, Verdict::fail));
    const auto cross = check_cross_terms(x, a);
    const double bc = cross.background_cross / cross.scale;
    add("background_cross", seed, n, cross.background_cross, 0.0, bc,
        verdict_within(bc, tol_exact, Verdict::exact, Verdict::fail));
    add("fluctuation_cross", seed, n, cross.fluctuation_cross, 0.0, cross.fluctuation_cross / cross.scale,
        to_string(Verdict::recorded));
  }

  // Cross terms on the physical background.
  const AngleGuard<double> guard{cfg.angle_guard};
  const auto bg = build_background(cfg.theta, cfg.z2, cfg.R, static_cast<Eigen::Index>(cfg.N), guard);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0, 1);
  std::array<std::vector<Complex<double>>, 3> coeffs;
  for (auto& c : coeffs)
    for (int deg = 0; deg < 3; ++deg) c.emplace_back(normal(rng), normal(rng));
  const auto momentum = check_cross_terms(bg, momentum_fluctuation(bg, coeffs));
  const auto generic = check_cross_terms(bg, random_fluctuation<double>(bg.N, cfg.seed));
  for (const auto& [label, r] : {std::pair{"momentum", momentum}, std::pair{"generic", generic}}) {
    const double bc = r.background_cross / r.scale;
    add(std::string("background_cross[bg,") + label + "]", cfg.seed, cfg.N, r.background_cross, 0.0, bc,
        verdict_within(bc, tol_exact, Verdict::exact, Verdict::fail));
  }
  const double fm = momentum.fluctuation_cross / momentum.scale;
  add("fluctuation_cross[bg,momentum]", cfg.seed, cfg.N, momentum.fluctuation_cross, 0.0, fm,
      verdict_within(fm, tol_id, Verdict::pass, Verdict::recorded));
  add("fluctuation_cross[bg,generic]", cfg.seed, cfg.N, generic.fluctuation_cross, 0.0,
      generic.fluctuation_cross / generic.scale, to_string(Verdict::recorded));

  // Quartic forms against the direct block trace.
  const auto fields = random_fields<double>(cfg.dim, cfg.seed);
  const auto qt = check_quartic_T(fields, cfg.seed, tol_id);
  const auto qr = check_quartic_Ttilde(fields, cfg.seed, tol_id);
  add("quartic_commutator_form[generic]", cfg.seed, cfg.dim, qt.lhs, qt.rhs, qt.relative, to_string(qt.verdict));
  add("quartic_rotated_form[generic]", cfg.seed, cfg.dim, qr.lhs, qr.rhs, qr.relative, to_string(qr.verdict));

  Triple<double> commuting;
  {
    std::mt19937_64 crng(cfg.seed);
    for (auto& m : commuting) m = random_complex<double>(cfg.dim, crng).diagonal().asDiagonal();
  }
  const auto qc = check_quartic_T(commuting, cfg.seed, tol_id);
  const auto qcr = check_quartic_Ttilde(commuting, cfg.seed, tol_id);
  add("quartic_commutator_form[commuting]", cfg.seed, cfg.dim, qc.lhs, qc.rhs, qc.relative, to_string(qc.verdict));
  add("quartic_rotated_form[commuting]", cfg.seed, cfg.dim, qcr.lhs, qcr.rhs, qcr.relative, to_string(qcr.verdict));

  // Pure tachyon direction: T~1 = t I, T~2 = T~3 = 0.
  const double t = std::sqrt(2 * std::numbers::pi * cfg.z2 * std::cos(cfg.theta));
  const Matrix3c<double> u_inv = rotation_U<double>().adjoint();
  Triple<double> tachyon;
  for (int k = 0; k < 3; ++k)
    tachyon[k] = u_inv(k, 0) * t * CMatrix<double>::Identity(cfg.dim, cfg.dim);
  const auto qtc = check_quartic_Ttilde(tachyon, std::nullopt, tol_id);
  const auto qtt = check_quartic_T(tachyon, std::nullopt, tol_id);
  add("quartic_rotated_form[tachyon]", cfg.seed, cfg.dim, qtc.lhs, qtc.rhs, qtc.relative, to_string(qtc.verdict));
  add("quartic_commutator_form[tachyon]", cfg.seed, cfg.dim, qtt.lhs, qtt.rhs, qtt.relative, to_string(qtt.verdict));

  auto describe = [](const char* form, const QuarticReport<double>& generic_rep,
                     const QuarticReport<double>& commuting_rep) {
    std::ostringstream s;
    s << form << ": generic T " << (generic_rep.verdict == Verdict::pass ? "matches" : "does not match")
      << " the direct trace (relative residual " << format_number(generic_rep.relative, 6) << ", opposite-sign residual "
      << format_number(generic_rep.flipped_residual, 6) << "); commuting T "
      << (commuting_rep.verdict == Verdict::pass ? "matches" : "does not match") << " (relative residual "
      << format_number(commuting_rep.relative, 6) << ")";
    return s.str();
  };
  rep.findings.push_back(describe("commutator form", qt, qc));
  rep.findings.push_back(describe("rotated form", qr, qcr));
  rep.findings.push_back("commutator form vs rotated form on the generic input differ by " +
                         format_number(qt.cross_form_difference, 6));
  return rep;
}

CondenseReport make_condense_report(const RunConfig& cfg)
{
  const auto p = condensation_params(cfg);
  const auto pot = tachyon_potential(p);
  const auto num = numeric_minimum(p, cfg.tol("minimum"));
  const double err = std::abs(num.t - pot.tmin);
  const double stat = stationarity_residual(p);
  return {params_of(cfg), pot.quad, pot.quart, pot.tmin, num.t, pot.vmin, stat, err,
          err <= cfg.tol("minimum") && stat <= cfg.tol("stationarity")};
}

CurveReport make_curve_report(const RunConfig& cfg)
{
  const auto p = condensation_params(cfg);
  const auto curve = sample_curve(cfg.x0_min, cfg.x0_max, cfg.points, p);
  CurveReport rep{params_of(cfg), {}, 0.0, 0.0, false, 0.0, false};
  for (std::size_t k = 0; k < curve.grid.size(); ++k) {
    const double x0 = curve.grid[k];
    for (Branch b : {Branch::minus, Branch::plus}) {
      const auto& pt = curve.at(k, b);
      rep.rows.push_back({x0, to_string(b), pt.x_d, pt.y_d, pt.residual});
      rep.max_residual = std::max(rep.max_residual, pt.residual / std::max(1.0, x0 * x0));
    }
    rep.max_route_difference = std::max(rep.max_route_difference, recombined_eigenvalues(x0, p).route_difference());
  }
  for (const auto& a : curve.asymptotes) {
    const double residual = std::abs(a.x_d * a.x_d - std::pow(std::tan(cfg.theta) * a.y_d, 2));
    rep.rows.push_back({a.x0, std::string("asymptote_") + to_string(a.branch), a.x_d, a.y_d, residual});
  }
  const double span = std::abs(cfg.x0_min) + std::abs(cfg.x0_max);
  if (std::abs(cfg.x0_min + cfg.x0_max) <= 1e-12 * span) {
    rep.has_asymmetry = true;
    rep.asymmetry_gap = asymmetry_gap(curve);
  }
  rep.passed = rep.max_residual <= cfg.tol("hyperbola") && rep.max_route_difference <= cfg.tol("eigen2x2");
  return rep;
}

namespace {

template <typename Report>
int emit(const RunConfig& cfg, const std::function<Report(const RunConfig&)>& make, std::ostream& out,
         std::ostream& err, const std::function<void(const Report&, std::ostream&)>& summary)
{
  Report rep;
  try {
    validate(cfg);
    rep = make(cfg);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return exit_invalid_input;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return exit_invalid_input;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << "\n";
    return exit_verification_failed;
  }

  const std::string text = render(rep, cfg.format);
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "cannot write '" << cfg.out_path << "'\n";
      return exit_invalid_input;
    }
    file << text;
  }
  summary(rep, err);
  return rep.passed ? exit_ok : exit_verification_failed;
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  return emit<SpectrumReport>(cfg, make_spectrum_report, out, err, [](const SpectrumReport& r, std::ostream& e) {
    if (!r.passed)
      e << "spectrum: " << r.unmatched << " trusted eigenvalue(s) off the closed form, tachyon_units="
        << format_number(r.tachyon_units, 15) << ", route_residual=" << format_number(r.route_residual, 6) << "\n";
  });
}

int cmd_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  return emit<IdentityReport>(cfg, make_identity_report, out, err, [](const IdentityReport& r, std::ostream& e) {
    for (const auto& row : r.rows)
      if (row.verdict == "fail")
        e << "identities: " << row.identity << " failed (seed " << row.seed << ", residual "
          << format_number(row.residual, 6) << ")\n";
  });
}

int cmd_condense(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  return emit<CondenseReport>(cfg, make_condense_report, out, err, [](const CondenseReport& r, std::ostream& e) {
    if (!r.passed)
      e << "condense: numeric minimum off by " << format_number(r.minimum_error, 6) << ", stationarity residual "
        << format_number(r.stationarity_residual, 6) << "\n";
  });
}

int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  return emit<CurveReport>(cfg, make_curve_report, out, err, [](const CurveReport& r, std::ostream& e) {
    e << "max hyperbola residual: " << format_number(r.max_residual, 6) << "\n";
  });
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
  if (name == "spectrum") return cmd_spectrum(cfg, out, err);
  if (name == "identities") return cmd_identities(cfg, out, err);
  if (name == "condense") return cmd_condense(cfg, out, err);
  if (name == "curve") return cmd_curve(cfg, out, err);
  err << "unknown subcommand '" << name << "'\n";
  return exit_invalid_input;
}

}  // namespace matbrane
