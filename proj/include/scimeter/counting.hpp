#pragma once

// Counting schemes: whole, fractional (1/n per distinct country), and
// corresponding-author (one-hot on the corresponding country).
//
// Fractional country outputs are accumulated as integer numerators over
// lcm(1..27) whenever a record has at most 27 distinct countries, so
// totals are exact and order-invariant; records with more countries (not
// producible by the generator) fall back to compensated double sums.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "scimeter/classification.hpp"
#include "scimeter/corpus.hpp"
#include "scimeter/detail/accum.hpp"
#include "scimeter/normalization.hpp"

namespace scimeter {

enum class CountingScheme { Whole, Fractional, CorrespondingAuthor };

inline std::string_view counting_scheme_name(CountingScheme s) {
  switch (s) {
    case CountingScheme::Whole: return "whole";
    case CountingScheme::Fractional: return "fractional";
    case CountingScheme::CorrespondingAuthor: return "corresponding_author";
  }
  return "whole";
}

/// Per-record country weights under a scheme. CorrespondingAuthor with an
/// absent corresponding index yields the empty map.
inline std::map<CountryCode, double> scheme_weights(
    const PublicationRecord& record, CountingScheme scheme) {
  std::map<CountryCode, double> weights;
  switch (scheme) {
    case CountingScheme::Whole:
      for (const auto& c : distinct_countries(record)) weights[c] = 1.0;
      break;
    case CountingScheme::Fractional: {
      const auto countries = distinct_countries(record);
      const double w = 1.0 / static_cast<double>(countries.size());
      for (const auto& c : countries) weights[c] = w;
      break;
    }
    case CountingScheme::CorrespondingAuthor:
      if (auto c = corresponding_country(record)) weights[*c] = 1.0;
      break;
  }
  return weights;
}

inline double country_output(const Corpus& corpus, CountryCode country,
                             CountingScheme scheme) {
  std::int64_t whole = 0;
  detail::uint128 frac_num = 0;
  detail::CompensatedSum frac_overflow;
  for (const auto& r : corpus.records) {
    switch (scheme) {
      case CountingScheme::Whole: {
        for (const auto& a : r.affiliations) {
          if (a.country == country) {
            whole += 1;
            break;
          }
        }
        break;
      }
      case CountingScheme::Fractional: {
        const auto countries = distinct_countries(r);
        if (std::find(countries.begin(), countries.end(), country) ==
            countries.end()) {
          break;
        }
        const auto n = countries.size();
        if (n <= 27) {
          frac_num += detail::kMassDenominator / n;
        } else {
          frac_overflow.add(1.0 / static_cast<double>(n));
        }
        break;
      }
      case CountingScheme::CorrespondingAuthor:
        if (has_corresponding_authorship(r, country)) whole += 1;
        break;
    }
  }
  if (scheme == CountingScheme::Fractional) {
    return static_cast<double>(frac_num) /
               static_cast<double>(detail::kMassDenominator) +
           frac_overflow.value();
  }
  return static_cast<double>(whole);
}

/// Sum of country_output over all countries, computed exactly at the
/// numerator level. Under Fractional this equals the record count for any
/// corpus whose records have at most 27 distinct countries each.
inline double total_output(const Corpus& corpus, CountingScheme scheme) {
  std::int64_t whole = 0;
  detail::uint128 frac_num = 0;
  detail::CompensatedSum frac_overflow;
  for (const auto& r : corpus.records) {
    switch (scheme) {
      case CountingScheme::Whole:
        whole += static_cast<std::int64_t>(distinct_countries(r).size());
        break;
      case CountingScheme::Fractional: {
        const auto n = distinct_countries(r).size();
        if (n <= 27) {
          frac_num += (detail::kMassDenominator / n) * n;
        } else {
          frac_overflow.add(1.0);
        }
        break;
      }
      case CountingScheme::CorrespondingAuthor:
        if (corresponding_country(r)) whole += 1;
        break;
    }
  }
  if (scheme == CountingScheme::Fractional) {
    return static_cast<double>(frac_num / detail::kMassDenominator) +
           frac_overflow.value();
  }
  return static_cast<double>(whole);
}

struct NiResult {
  std::optional<double> value;
  std::int64_t excluded_items = 0;  // zero-mean-stratum items skipped
};

using RecordPredicate = std::function<bool(const PublicationRecord&)>;

/// Weighted NI of the records passing `filter`, with each item weighted by
/// the country's scheme weight for that record.
inline NiResult ni_by_scheme(const Corpus& corpus, CountryCode country,
                             CountingScheme scheme, const Baselines& baselines,
                             const RecordPredicate& filter = {}) {
  NiResult result;
  detail::CompensatedSum num, den;
  bool any_weight = false;
  for (const auto& r : corpus.records) {
    if (filter && !filter(r)) continue;
    const auto weights = scheme_weights(r, scheme);
    const auto it = weights.find(country);
    if (it == weights.end() || it->second == 0.0) continue;
    const auto score = normalized_score(r, baselines);
    if (!score) {
      result.excluded_items += 1;
      continue;
    }
    num.add(it->second * *score);
    den.add(it->second);
    any_weight = true;
  }
  if (any_weight && den.value() != 0.0) result.value = num.value() / den.value();
  return result;
}

/// NI under whole counting minus NI under fractional counting; undefined
/// when either side is undefined.
inline std::optional<double> full_counting_bonus(const Corpus& corpus,
                                                 CountryCode country,
                                                 const Baselines& baselines) {
  const auto whole = ni_by_scheme(corpus, country, CountingScheme::Whole, baselines);
  const auto frac =
      ni_by_scheme(corpus, country, CountingScheme::Fractional, baselines);
  if (!whole.value || !frac.value) return std::nullopt;
  return *whole.value - *frac.value;
}

}  // namespace scimeter
