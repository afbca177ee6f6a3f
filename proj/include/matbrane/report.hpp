#pragma once

// Plain-double report records and their two serializations: a delimited text
// table (header "# theta=<v> z2=<v> R=<v>", then comma-separated rows, six
// significant digits) and a structured JSON document (15 significant digits).

#include <cstdint>
#include <string>
#include <vector>

#include "matbrane/config.hpp"

namespace matbrane {

struct ReportParams {
  double theta;
  double z2;
  double R;
};

struct SpectrumRow {
  std::string source;  // analytic | numeric
  std::string sector;
  int n;               // -1 when a numeric eigenvector has no resolved level
  double eigenvalue_units;
  double eigenvalue_bare;
  double eigenvalue_raw;
  int multiplicity;
  bool trusted;
};

struct SpectrumReport {
  ReportParams params;
  int N;
  int margin_k;
  double scale;
  std::vector<SpectrumRow> rows;
  double route_residual;
  int horizon;
  int trusted;
  int unmatched;
  double tachyon_units;
  double max_error_units;
  bool passed;
};

struct IdentityRow {
  std::string identity;
  std::uint64_t seed;
  int dim;
  double lhs;
  double rhs;
  double residual;
  std::string verdict;
};

struct IdentityReport {
  ReportParams params;
  std::uint64_t seed;
  std::vector<IdentityRow> rows;
  std::vector<std::string> findings;
  bool passed;
};

struct CondenseReport {
  ReportParams params;
  double quad;
  double quart;
  double tmin_analytic;
  double tmin_numeric;
  double vmin;
  double stationarity_residual;
  double minimum_error;
  bool passed;
};

struct CurveRow {
  double x0;
  std::string branch;  // minus | plus | asymptote_minus | asymptote_plus
  double x_d;
  double y_d;
  double residual;
};

struct CurveReport {
  ReportParams params;
  std::vector<CurveRow> rows;
  double max_residual;
  double max_route_difference;
  bool has_asymmetry;
  double asymmetry_gap;
  bool passed;
};

/// printf-style "%.<digits>g"
std::string format_number(double v, int digits);

/// Rounds to `digits` significant decimal digits.
double round_significant(double v, int digits);

std::string render(const SpectrumReport& r, OutputFormat f);
std::string render(const IdentityReport& r, OutputFormat f);
std::string render(const CondenseReport& r, OutputFormat f);
std::string render(const CurveReport& r, OutputFormat f);

}  // namespace matbrane
