#include "matbrane/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace matbrane {

namespace {

constexpr int table_digits = 6;
constexpr int structured_digits = 15;

using nlohmann::ordered_json;

double sig(double v) { return round_significant(v, structured_digits); }

std::string num(double v) { return format_number(v, table_digits); }

std::string header(const ReportParams& p)
{
  return "# theta=" + format_number(p.theta, structured_digits) + " z2=" + format_number(p.z2, structured_digits) +
         " R=" + format_number(p.R, structured_digits) + "\n";
}

ordered_json params_json(const ReportParams& p)
{
  return {{"theta", sig(p.theta)}, {"z2", sig(p.z2)}, {"R", sig(p.R)}};
}

std::string finish(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string format_number(double v, int digits)
{
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double round_significant(double v, int digits)
{
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

std::string render(const SpectrumReport& r, OutputFormat f)
{
  const char* units = "eigenvalue_units: 4*pi*z2*R*cos(theta); eigenvalue_bare: 4*pi*z2*R; eigenvalue_raw: energy^2";
  if (f == OutputFormat::structured) {
    ordered_json records = ordered_json::array();
    for (const auto& row : r.rows)
      records.push_back({{"source", row.source},
                         {"sector", row.sector},
                         {"n", row.n},
                         {"eigenvalue_units", sig(row.eigenvalue_units)},
                         {"eigenvalue_bare", sig(row.eigenvalue_bare)},
                         {"eigenvalue_raw", sig(row.eigenvalue_raw)},
                         {"multiplicity", row.multiplicity},
                         {"trusted", row.trusted}});
    ordered_json doc = {{"report", "spectrum"},
                        {"params", params_json(r.params)},
                        {"N", r.N},
                        {"margin_k", r.margin_k},
                        {"scale", sig(r.scale)},
                        {"units", units},
                        {"records", records},
                        {"summary",
                         {{"route_residual", sig(r.route_residual)},
                          {"trust_horizon", r.horizon},
                          {"trusted", r.trusted},
                          {"unmatched", r.unmatched},
                          {"tachyon_units", sig(r.tachyon_units)},
                          {"max_error_units", sig(r.max_error_units)},
                          {"passed", r.passed}}}};
    return finish(doc);
  }
  std::ostringstream out;
  out << header(r.params);
  out << "# N=" << r.N << " margin_k=" << r.margin_k << " scale=" << format_number(r.scale, structured_digits) << "\n";
  out << "# " << units << "\n";
  out << "source,sector,n,eigenvalue_units,eigenvalue_bare,eigenvalue_raw,multiplicity,trusted\n";
  for (const auto& row : r.rows)
    out << row.source << ',' << row.sector << ',' << row.n << ',' << num(row.eigenvalue_units) << ','
        << num(row.eigenvalue_bare) << ',' << num(row.eigenvalue_raw) << ',' << row.multiplicity << ','
        << (row.trusted ? "true" : "false") << "\n";
  out << "# route_residual=" << num(r.route_residual) << " trust_horizon=" << r.horizon << " trusted=" << r.trusted
      << " unmatched=" << r.unmatched << " tachyon_units=" << num(r.tachyon_units)
      << " max_error_units=" << num(r.max_error_units) << "\n";
  out << "# verdict=" << (r.passed ? "pass" : "fail") << "\n";
  return out.str();
}

std::string render(const IdentityReport& r, OutputFormat f)
{
  if (f == OutputFormat::structured) {
    ordered_json records = ordered_json::array();
    for (const auto& row : r.rows)
      records.push_back({{"identity", row.identity},
                         {"seed", row.seed},
                         {"dim", row.dim},
                         {"lhs", sig(row.lhs)},
                         {"rhs", sig(row.rhs)},
                         {"residual", sig(row.residual)},
                         {"verdict", row.verdict}});
    ordered_json doc = {{"report", "identities"},
                        {"params", params_json(r.params)},
                        {"seed", r.seed},
                        {"records", records},
                        {"findings", r.findings},
                        {"passed", r.passed}};
    return finish(doc);
  }
  std::ostringstream out;
  out << header(r.params);
  out << "# seed=" << r.seed << "\n";
  out << "identity,seed,dim,lhs,rhs,residual,verdict\n";
  for (const auto& row : r.rows)
    out << row.identity << ',' << row.seed << ',' << row.dim << ',' << num(row.lhs) << ',' << num(row.rhs) << ','
        << num(row.residual) << ',' << row.verdict << "\n";
  for (const auto& finding : r.findings) out << "# finding: " << finding << "\n";
  out << "# verdict=" << (r.passed ? "pass" : "fail") << "\n";
  return out.str();
}

std::string render(const CondenseReport& r, OutputFormat f)
{
  if (f == OutputFormat::structured) {
    ordered_json doc = {{"report", "condense"},
                        {"params", params_json(r.params)},
                        {"quad", sig(r.quad)},
                        {"quart", sig(r.quart)},
                        {"tmin_analytic", sig(r.tmin_analytic)},
                        {"tmin_numeric", sig(r.tmin_numeric)},
                        {"vmin", sig(r.vmin)},
                        {"stationarity_residual", sig(r.stationarity_residual)},
                        {"minimum_error", sig(r.minimum_error)},
                        {"passed", r.passed}};
    return finish(doc);
  }
  std::ostringstream out;
  out << header(r.params);
  out << "quad,quart,tmin_analytic,tmin_numeric,vmin,stationarity_residual,minimum_error\n";
  out << num(r.quad) << ',' << num(r.quart) << ',' << num(r.tmin_analytic) << ',' << num(r.tmin_numeric) << ','
      << num(r.vmin) << ',' << num(r.stationarity_residual) << ',' << num(r.minimum_error) << "\n";
  out << "# verdict=" << (r.passed ? "pass" : "fail") << "\n";
  return out.str();
}

std::string render(const CurveReport& r, OutputFormat f)
{
  if (f == OutputFormat::structured) {
    ordered_json points = ordered_json::array();
    for (const auto& row : r.rows)
      points.push_back({{"x0", sig(row.x0)},
                        {"branch", row.branch},
                        {"x_d", sig(row.x_d)},
                        {"y_d", sig(row.y_d)},
                        {"residual", sig(row.residual)}});
    ordered_json summary = {{"max_residual", sig(r.max_residual)},
                            {"max_route_difference", sig(r.max_route_difference)}};
    summary["asymmetry_gap"] = r.has_asymmetry ? ordered_json(sig(r.asymmetry_gap)) : ordered_json(nullptr);
    summary["passed"] = r.passed;
    ordered_json doc = {{"report", "curve"}, {"params", params_json(r.params)}, {"points", points},
                        {"summary", summary}};
    return finish(doc);
  }
  std::ostringstream out;
  out << header(r.params);
  out << "x0,branch,x_d,y_d,residual\n";
  for (const auto& row : r.rows)
    out << num(row.x0) << ',' << row.branch << ',' << num(row.x_d) << ',' << num(row.y_d) << ','
        << num(row.residual) << "\n";
  out << "# max_residual=" << num(r.max_residual) << " max_route_difference=" << num(r.max_route_difference);
  if (r.has_asymmetry) out << " asymmetry_gap=" << num(r.asymmetry_gap);
  out << "\n# verdict=" << (r.passed ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace matbrane
