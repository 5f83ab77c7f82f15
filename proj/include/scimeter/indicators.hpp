#pragma once

// Per-country indicator rows: outputs under the three counting schemes,
// collaboration shares (overlapping and exclusive variants), corresponding-
// authorship shares, and NI over the standard record subsets.
//
// Subset NIs (ni_all, ni_ic, ni_nc, ni_wc, ni_ca, ni_ic_ca, ni_ic_nonca)
// weight items by 1 (whole counting restricted to the subset); the
// fractional scheme enters only through ni_frac and the full counting
// bonus. ni_ic_ca / ni_ic_nonca partition a country's IC papers by whether
// it holds the corresponding authorship; records with no corresponding
// index fall on the non-CA side, which keeps ni_ic the exact count-weighted
// mean of the two parts.

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "scimeter/classification.hpp"
#include "scimeter/corpus.hpp"
#include "scimeter/counting.hpp"
#include "scimeter/detail/accum.hpp"
#include "scimeter/normalization.hpp"

namespace scimeter {

struct CountryIndicators {
  CountryCode country = CountryCode::of("AAA");
  double output_whole = 0.0;
  double output_frac = 0.0;
  double output_ca = 0.0;
  // Overlapping collaboration shares (flags are non-exclusive).
  double pct_ic = 0.0;
  double pct_nc = 0.0;
  double pct_wc = 0.0;
  // Exclusive-hierarchy shares (IC > NC > WC precedence; sum to 100).
  double pct_ic_x = 0.0;
  double pct_nc_x = 0.0;
  double pct_wc_x = 0.0;
  // CA shares over records with a known corresponding index.
  std::optional<double> pct_ca;
  std::optional<double> pct_ca_ic;
  std::optional<double> ni_all;
  std::optional<double> ni_ic;
  std::optional<double> ni_nc;
  std::optional<double> ni_wc;
  std::optional<double> ni_ca;
  std::optional<double> ni_ic_ca;
  std::optional<double> ni_ic_nonca;
  std::optional<double> ni_frac;
  std::optional<double> fcb;
  std::int64_t ca_unknown_count = 0;
};

/// Column order of the serialized indicator table.
inline const std::vector<std::string_view>& indicator_columns() {
  static const std::vector<std::string_view> cols = {
      "country",   "output_whole", "output_frac", "output_ca", "pct_ic",
      "pct_nc",    "pct_wc",       "pct_ic_x",    "pct_nc_x",  "pct_wc_x",
      "pct_ca",    "pct_ca_ic",    "ni_all",      "ni_ic",     "ni_nc",
      "ni_wc",     "ni_ca",        "ni_ic_ca",    "ni_ic_nonca",
      "ni_frac",   "fcb",          "ca_unknown_count"};
  return cols;
}

/// Numeric field lookup by column name (for correlation pairs and figure
/// data). Returns nullopt for undefined values; throws on unknown names.
inline std::optional<double> indicator_field(const CountryIndicators& row,
                                             std::string_view name) {
  if (name == "output_whole") return row.output_whole;
  if (name == "output_frac") return row.output_frac;
  if (name == "output_ca") return row.output_ca;
  if (name == "pct_ic") return row.pct_ic;
  if (name == "pct_nc") return row.pct_nc;
  if (name == "pct_wc") return row.pct_wc;
  if (name == "pct_ic_x") return row.pct_ic_x;
  if (name == "pct_nc_x") return row.pct_nc_x;
  if (name == "pct_wc_x") return row.pct_wc_x;
  if (name == "pct_ca") return row.pct_ca;
  if (name == "pct_ca_ic") return row.pct_ca_ic;
  if (name == "ni_all") return row.ni_all;
  if (name == "ni_ic") return row.ni_ic;
  if (name == "ni_nc") return row.ni_nc;
  if (name == "ni_wc") return row.ni_wc;
  if (name == "ni_ca") return row.ni_ca;
  if (name == "ni_ic_ca") return row.ni_ic_ca;
  if (name == "ni_ic_nonca") return row.ni_ic_nonca;
  if (name == "ni_frac") return row.ni_frac;
  if (name == "fcb") return row.fcb;
  if (name == "ca_unknown_count")
    return static_cast<double>(row.ca_unknown_count);
  throw Error("unknown indicator field: " + std::string(name));
}

struct IndicatorComputation {
  std::vector<CountryIndicators> rows;  // descending output_whole, code ties
  std::int64_t excluded_items = 0;      // zero-mean-stratum items skipped
  std::int64_t ca_unknown_records = 0;  // records with no corresponding index
};

namespace detail {

struct CountryAccum {
  std::int64_t papers = 0;
  std::int64_t ic = 0, nc = 0, wc = 0;
  std::int64_t x_ic = 0, x_nc = 0, x_wc = 0;
  std::int64_t ca_known = 0, ca_held = 0;
  std::int64_t ic_ca_known = 0, ic_ca_held = 0;
  std::int64_t ca_unknown = 0;
  uint128 frac_num = 0;
  CompensatedSum frac_overflow;
  std::int64_t n_all = 0, n_ic = 0, n_nc = 0, n_wc = 0, n_ca = 0;
  std::int64_t n_ic_ca = 0, n_ic_nonca = 0;
  CompensatedSum s_all, s_ic, s_nc, s_wc, s_ca, s_ic_ca, s_ic_nonca;
  CompensatedSum frac_ws, frac_w;
};

inline std::optional<double> mean_of(const CompensatedSum& sum,
                                     std::int64_t count) {
  if (count == 0) return std::nullopt;
  return sum.value() / static_cast<double>(count);
}

}  // namespace detail

/// Single pass over the corpus, accumulating per-country state in country
/// order. Record order is whatever the corpus carries; ingestion
/// canonicalizes it, so tables do not depend on input line order.
inline IndicatorComputation compute_indicators(const Corpus& corpus,
                                               const Baselines& baselines) {
  std::map<CountryCode, detail::CountryAccum> acc;
  IndicatorComputation out;

  for (const auto& r : corpus.records) {
    const auto countries = distinct_countries(r);
    const auto flags = classify(r);
    const auto ca = corresponding_country(r);
    const auto score = normalized_score(r, baselines);
    const auto n = countries.size();
    const double frac_w = 1.0 / static_cast<double>(n);

    if (!score) out.excluded_items += 1;
    if (!ca) out.ca_unknown_records += 1;

    for (const auto& c : countries) {
      auto& a = acc[c];
      a.papers += 1;
      if (n <= 27) {
        a.frac_num += detail::kMassDenominator / n;
      } else {
        a.frac_overflow.add(frac_w);
      }

      if (flags.international) a.ic += 1;
      if (flags.national) a.nc += 1;
      if (flags.single_institution) a.wc += 1;
      if (flags.international) {
        a.x_ic += 1;
      } else if (flags.national) {
        a.x_nc += 1;
      } else {
        a.x_wc += 1;
      }

      const bool holds_ca = ca && *ca == c;
      if (ca) {
        a.ca_known += 1;
        if (holds_ca) a.ca_held += 1;
        if (flags.international) {
          a.ic_ca_known += 1;
          if (holds_ca) a.ic_ca_held += 1;
        }
      } else {
        a.ca_unknown += 1;
      }

      if (score) {
        const double s = *score;
        a.s_all.add(s);
        a.n_all += 1;
        if (flags.international) {
          a.s_ic.add(s);
          a.n_ic += 1;
          if (holds_ca) {
            a.s_ic_ca.add(s);
            a.n_ic_ca += 1;
          } else {
            a.s_ic_nonca.add(s);
            a.n_ic_nonca += 1;
          }
        }
        if (flags.national) {
          a.s_nc.add(s);
          a.n_nc += 1;
        }
        if (flags.single_institution) {
          a.s_wc.add(s);
          a.n_wc += 1;
        }
        if (holds_ca) {
          a.s_ca.add(s);
          a.n_ca += 1;
        }
        a.frac_ws.add(frac_w * s);
        a.frac_w.add(frac_w);
      }
    }
  }

  out.rows.reserve(acc.size());
  for (const auto& [country, a] : acc) {
    CountryIndicators row;
    row.country = country;
    row.output_whole = static_cast<double>(a.papers);
    row.output_frac = static_cast<double>(a.frac_num) /
                          static_cast<double>(detail::kMassDenominator) +
                      a.frac_overflow.value();
    row.output_ca = static_cast<double>(a.ca_held);

    const double papers = static_cast<double>(a.papers);
    row.pct_ic = 100.0 * static_cast<double>(a.ic) / papers;
    row.pct_nc = 100.0 * static_cast<double>(a.nc) / papers;
    row.pct_wc = 100.0 * static_cast<double>(a.wc) / papers;
    row.pct_ic_x = 100.0 * static_cast<double>(a.x_ic) / papers;
    row.pct_nc_x = 100.0 * static_cast<double>(a.x_nc) / papers;
    row.pct_wc_x = 100.0 * static_cast<double>(a.x_wc) / papers;
    if (a.ca_known > 0) {
      row.pct_ca = 100.0 * static_cast<double>(a.ca_held) /
                   static_cast<double>(a.ca_known);
    }
    if (a.ic_ca_known > 0) {
      row.pct_ca_ic = 100.0 * static_cast<double>(a.ic_ca_held) /
                      static_cast<double>(a.ic_ca_known);
    }

    row.ni_all = detail::mean_of(a.s_all, a.n_all);
    row.ni_ic = detail::mean_of(a.s_ic, a.n_ic);
    row.ni_nc = detail::mean_of(a.s_nc, a.n_nc);
    row.ni_wc = detail::mean_of(a.s_wc, a.n_wc);
    row.ni_ca = detail::mean_of(a.s_ca, a.n_ca);
    row.ni_ic_ca = detail::mean_of(a.s_ic_ca, a.n_ic_ca);
    row.ni_ic_nonca = detail::mean_of(a.s_ic_nonca, a.n_ic_nonca);
    if (a.frac_w.value() > 0.0) {
      row.ni_frac = a.frac_ws.value() / a.frac_w.value();
    }
    if (row.ni_all && row.ni_frac) row.fcb = *row.ni_all - *row.ni_frac;
    row.ca_unknown_count = a.ca_unknown;

    out.rows.push_back(std::move(row));
  }

  std::sort(out.rows.begin(), out.rows.end(),
            [](const CountryIndicators& a, const CountryIndicators& b) {
              if (a.output_whole != b.output_whole)
                return a.output_whole > b.output_whole;
              return a.country < b.country;
            });
  return out;
}

/// Indicator row for one country; the country must appear in the corpus.
inline CountryIndicators indicator_row(const Corpus& corpus,
                                       const Baselines& baselines,
                                       CountryCode country) {
  const auto computed = compute_indicators(corpus, baselines);
  for (const auto& row : computed.rows) {
    if (row.country == country) return row;
  }
  throw Error("country " + country.str() + " has no papers in the corpus");
}

struct Selection {
  enum class Kind { All, TopN, MinOutput };
  Kind kind = Kind::All;
  std::size_t top_n = 0;
  double min_output = 0.0;

  static Selection all() { return {}; }
  static Selection top(std::size_t n) {
    return {Kind::TopN, n, 0.0};
  }
  static Selection min(double threshold) {
    return {Kind::MinOutput, 0, threshold};
  }
};

/// Rows for the selected countries, descending by whole-counted output with
/// ties broken by country code.
inline std::vector<CountryIndicators> indicator_table(
    const Corpus& corpus, const Baselines& baselines,
    const Selection& selection = Selection::all()) {
  auto computed = compute_indicators(corpus, baselines);
  auto rows = std::move(computed.rows);
  switch (selection.kind) {
    case Selection::Kind::All:
      break;
    case Selection::Kind::TopN:
      if (rows.size() > selection.top_n) rows.resize(selection.top_n);
      break;
    case Selection::Kind::MinOutput:
      std::erase_if(rows, [&](const CountryIndicators& r) {
        return r.output_whole < selection.min_output;
      });
      break;
  }
  return rows;
}

}  // namespace scimeter
