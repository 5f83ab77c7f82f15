#pragma once

// Delimited report files: indicator tables, correlation reports, figure
// data, and the run metadata block. All numbers use shortest round-trip
// formatting; undefined values are written as NA. Plotting is left to
// external tools.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scimeter/indicators.hpp"
#include "scimeter/record_io.hpp"
#include "scimeter/stats.hpp"

namespace scimeter {

inline constexpr std::string_view kNa = "NA";
inline constexpr std::string_view kPercentileRule =
    "linear interpolation between closest ranks, h=(n-1)*p/100";
inline constexpr std::string_view kPvalueMethod =
    "two-sided Student t via regularized incomplete beta, df=n-2";

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string(kNa);
}

inline std::string indicator_table_to_text(
    const std::vector<CountryIndicators>& rows) {
  std::string out;
  const auto& cols = indicator_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += '\t';
    out += cols[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    out += r.country.str();
    out += '\t';
    out += format_double(r.output_whole);
    out += '\t';
    out += format_double(r.output_frac);
    out += '\t';
    out += format_double(r.output_ca);
    out += '\t';
    out += format_double(r.pct_ic);
    out += '\t';
    out += format_double(r.pct_nc);
    out += '\t';
    out += format_double(r.pct_wc);
    out += '\t';
    out += format_double(r.pct_ic_x);
    out += '\t';
    out += format_double(r.pct_nc_x);
    out += '\t';
    out += format_double(r.pct_wc_x);
    out += '\t';
    out += format_optional(r.pct_ca);
    out += '\t';
    out += format_optional(r.pct_ca_ic);
    out += '\t';
    out += format_optional(r.ni_all);
    out += '\t';
    out += format_optional(r.ni_ic);
    out += '\t';
    out += format_optional(r.ni_nc);
    out += '\t';
    out += format_optional(r.ni_wc);
    out += '\t';
    out += format_optional(r.ni_ca);
    out += '\t';
    out += format_optional(r.ni_ic_ca);
    out += '\t';
    out += format_optional(r.ni_ic_nonca);
    out += '\t';
    out += format_optional(r.ni_frac);
    out += '\t';
    out += format_optional(r.fcb);
    out += '\t';
    out += std::to_string(r.ca_unknown_count);
    out += '\n';
  }
  return out;
}

/// Key/value metadata block; keys are emitted in insertion order.
class Metadata {
 public:
  void set(std::string_view key, std::string_view value) {
    entries_.emplace_back(key, value);
  }
  void set(std::string_view key, double value) {
    entries_.emplace_back(key, format_double(value));
  }
  void set(std::string_view key, std::int64_t value) {
    entries_.emplace_back(key, std::to_string(value));
  }

  std::string to_text() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
      out += k;
      out += ": ";
      out += v;
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct CorrelationReport {
  std::string x_field;
  std::string y_field;
  std::int64_t n = 0;               // points used
  std::int64_t dropped = 0;         // rows with either value undefined
  std::optional<double> r;          // undefined on zero variance
  std::optional<double> p_value;
  std::optional<double> slope;      // OLS y on x
  std::optional<double> intercept;
};

class TooFewPointsError : public Error {
 public:
  explicit TooFewPointsError(std::int64_t n)
      : Error("need at least 3 defined points, got " + std::to_string(n)) {}
};

/// Correlates two indicator columns across countries. Rows where either
/// value is undefined are dropped and counted.
inline CorrelationReport correlate_fields(
    const std::vector<CountryIndicators>& rows, std::string_view x_field,
    std::string_view y_field) {
  CorrelationReport report;
  report.x_field = std::string(x_field);
  report.y_field = std::string(y_field);
  std::vector<double> xs, ys;
  for (const auto& row : rows) {
    const auto x = indicator_field(row, x_field);
    const auto y = indicator_field(row, y_field);
    if (!x || !y) {
      report.dropped += 1;
      continue;
    }
    xs.push_back(*x);
    ys.push_back(*y);
  }
  report.n = static_cast<std::int64_t>(xs.size());
  if (report.n < 3) throw TooFewPointsError(report.n);

  PairedSample sample(std::move(xs), std::move(ys));
  report.r = pearson(sample);
  if (report.r) report.p_value = pearson_pvalue(*report.r, report.n);
  try {
    const auto fit = linfit(sample);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
  } catch (const ZeroVarianceError&) {
    // slope undefined; reported as NA
  }
  return report;
}

inline std::string correlation_to_text(const CorrelationReport& r) {
  std::string out = "pair\tn\tdropped\tr\tp\tslope\tintercept\n";
  out += r.x_field + ":" + r.y_field;
  out += '\t';
  out += std::to_string(r.n);
  out += '\t';
  out += std::to_string(r.dropped);
  out += '\t';
  out += format_optional(r.r);
  out += '\t';
  out += format_optional(r.p_value);
  out += '\t';
  out += format_optional(r.slope);
  out += '\t';
  out += format_optional(r.intercept);
  out += '\n';
  return out;
}

/// Scatter data: one row per country with both values defined.
inline std::string scatter_to_text(const std::vector<CountryIndicators>& rows,
                                   std::string_view x_field,
                                   std::string_view y_field) {
  std::string out = std::string(x_field) + "\t" + std::string(y_field) +
                    "\tcountry\n";
  for (const auto& row : rows) {
    const auto x = indicator_field(row, x_field);
    const auto y = indicator_field(row, y_field);
    if (!x || !y) continue;
    out += format_double(*x);
    out += '\t';
    out += format_double(*y);
    out += '\t';
    out += row.country.str();
    out += '\n';
  }
  return out;
}

class UnknownFigureSpecError : public Error {
 public:
  explicit UnknownFigureSpecError(std::string_view spec)
      : Error("unknown figure spec \"" + std::string(spec) +
              "\" (expected fig1, fig3, fig4, fig5, fig6, fig7 or fig8)") {}
};

/// Columnar data behind the standard figure styles. Scatter figures
/// (fig1, fig5, fig8) omit rows with undefined values; grouped-bar figures
/// (fig3, fig4, fig6, fig7) keep every selected country and write NA cells.
/// `exclusive` switches fig3 between the partition and overlapping share
/// variants.
inline std::string figure_data(const std::vector<CountryIndicators>& rows,
                               std::string_view spec, bool exclusive = true) {
  if (spec == "fig1") return scatter_to_text(rows, "pct_ic", "pct_ca");
  if (spec == "fig5") return scatter_to_text(rows, "ni_all", "ni_ca");
  if (spec == "fig8") return scatter_to_text(rows, "pct_ca_ic", "ni_ic");

  std::vector<std::string_view> cols;
  if (spec == "fig3") {
    cols = exclusive
               ? std::vector<std::string_view>{"pct_ic_x", "pct_nc_x", "pct_wc_x"}
               : std::vector<std::string_view>{"pct_ic", "pct_nc", "pct_wc"};
  } else if (spec == "fig4") {
    cols = {"ni_wc", "ni_nc", "ni_ic", "ni_all", "ni_ca"};
  } else if (spec == "fig6") {
    cols = {"pct_ca_ic"};
  } else if (spec == "fig7") {
    cols = {"ni_ic_ca", "ni_ic", "ni_ic_nonca"};
  } else {
    throw UnknownFigureSpecError(spec);
  }

  std::string out = "country";
  for (const auto& c : cols) {
    out += '\t';
    out += c;
  }
  if (spec == "fig6") out += "\tpct_nonca_ic";
  out += '\n';
  for (const auto& row : rows) {
    out += row.country.str();
    for (const auto& c : cols) {
      out += '\t';
      out += format_optional(indicator_field(row, c));
    }
    if (spec == "fig6") {
      out += '\t';
      const auto ca = row.pct_ca_ic;
      out += ca ? format_double(100.0 - *ca) : std::string(kNa);
    }
    out += '\n';
  }
  return out;
}

/// Distribution summary of whole-counted outputs across the table's
/// countries (mean and upper-tail percentiles).
inline std::string output_distribution_to_text(
    const std::vector<CountryIndicators>& rows) {
  std::string out = "n\tmean\tp99\tp95\tp90\tp75\tp50\tp25\n";
  if (rows.empty()) return out;
  std::vector<double> outputs;
  outputs.reserve(rows.size());
  detail::CompensatedSum total;
  for (const auto& r : rows) {
    outputs.push_back(r.output_whole);
    total.add(r.output_whole);
  }
  out += std::to_string(rows.size());
  out += '\t';
  out += format_double(total.value() / static_cast<double>(rows.size()));
  for (double p : {99.0, 95.0, 90.0, 75.0, 50.0, 25.0}) {
    out += '\t';
    out += format_double(percentile(outputs, p));
  }
  out += '\n';
  return out;
}

/// Mean of per-country ni_ca/ni_all ratios and ratio of the two means,
/// over rows where both are defined (the CA-vs-all gap, both readings).
struct CaGap {
  std::optional<double> mean_of_ratios;
  std::optional<double> ratio_of_means;
  std::int64_t countries_used = 0;
};

inline CaGap ca_gap(const std::vector<CountryIndicators>& rows) {
  CaGap gap;
  detail::CompensatedSum ratios, cas, alls;
  for (const auto& r : rows) {
    if (!r.ni_ca || !r.ni_all || *r.ni_all == 0.0) continue;
    ratios.add(*r.ni_ca / *r.ni_all);
    cas.add(*r.ni_ca);
    alls.add(*r.ni_all);
    gap.countries_used += 1;
  }
  if (gap.countries_used > 0) {
    gap.mean_of_ratios =
        ratios.value() / static_cast<double>(gap.countries_used);
    if (alls.value() != 0.0) gap.ratio_of_means = cas.value() / alls.value();
  }
  return gap;
}

}  // namespace scimeter
