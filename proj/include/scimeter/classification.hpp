#pragma once

// Collaboration typing and corresponding-country lookup.
//
// A record is an international collaboration when at least two distinct
// countries contribute, a national collaboration when some country
// contributes at least two distinct institutions, and single-institution
// when exactly one (institution, country) pair appears. International and
// national are deliberately non-exclusive: a record with both domestic
// multi-institution links and foreign links carries both flags.

#include <map>
#include <set>
#include <string_view>
#include <utility>

#include "scimeter/corpus.hpp"

namespace scimeter {

struct CollabFlags {
  bool international = false;
  bool national = false;
  bool single_institution = false;
};

inline CollabFlags classify(const PublicationRecord& record) {
  std::map<CountryCode, std::set<std::string_view>> by_country;
  std::set<std::pair<std::string_view, CountryCode>> pairs;
  for (const auto& a : record.affiliations) {
    by_country[a.country].insert(a.institution_id);
    pairs.insert({a.institution_id, a.country});
  }

  CollabFlags flags;
  flags.international = by_country.size() >= 2;
  flags.single_institution = pairs.size() == 1;
  if (!flags.single_institution) {
    for (const auto& [country, institutions] : by_country) {
      if (institutions.size() >= 2) {
        flags.national = true;
        break;
      }
    }
  }
  return flags;
}

inline std::optional<CountryCode> corresponding_country(
    const PublicationRecord& record) {
  if (!record.corresponding_index) return std::nullopt;
  return record.affiliations[*record.corresponding_index].country;
}

inline bool has_corresponding_authorship(const PublicationRecord& record,
                                         CountryCode country) {
  return corresponding_country(record) == country;
}

}  // namespace scimeter
