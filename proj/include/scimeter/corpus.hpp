#pragma once

// Domain model: publication records, validation, country accessors.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scimeter {

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 3-letter uppercase country identifier (ISO 3166-1 alpha-3 style).
class CountryCode {
 public:
  static std::optional<CountryCode> parse(std::string_view s) {
    if (s.size() != 3) return std::nullopt;
    std::array<char, 3> c{};
    for (int i = 0; i < 3; ++i) {
      if (s[i] < 'A' || s[i] > 'Z') return std::nullopt;
      c[i] = s[i];
    }
    return CountryCode(c);
  }

  // Throwing variant for literals and generator-internal codes.
  static CountryCode of(std::string_view s) {
    auto c = parse(s);
    if (!c) throw Error("invalid country code: " + std::string(s));
    return *c;
  }

  std::string str() const { return std::string(chars_.begin(), chars_.end()); }

  auto operator<=>(const CountryCode&) const = default;

 private:
  explicit CountryCode(std::array<char, 3> c) : chars_(c) {}
  std::array<char, 3> chars_;
};

enum class DocType { Article, Review, Note, ShortSurvey };

inline std::optional<DocType> parse_doc_type(std::string_view s) {
  if (s == "article") return DocType::Article;
  if (s == "review") return DocType::Review;
  if (s == "note") return DocType::Note;
  if (s == "short_survey") return DocType::ShortSurvey;
  return std::nullopt;
}

inline std::string_view doc_type_name(DocType t) {
  switch (t) {
    case DocType::Article: return "article";
    case DocType::Review: return "review";
    case DocType::Note: return "note";
    case DocType::ShortSurvey: return "short_survey";
  }
  return "article";
}

struct Affiliation {
  std::string institution_id;  // opaque, non-empty
  CountryCode country;
};

/// One validated document. Immutable after validation; disciplines are
/// kept sorted, affiliation order is preserved (corresponding_index is
/// positional).
struct PublicationRecord {
  std::string doc_id;
  int year = 0;
  DocType doc_type = DocType::Article;
  std::vector<int> disciplines;          // non-empty, each in [1,27], unique
  std::vector<Affiliation> affiliations; // non-empty
  std::optional<std::size_t> corresponding_index;
  std::int64_t citations = 0;
};

struct Corpus {
  std::vector<PublicationRecord> records;
  std::string census_note;
};

// ---------------------------------------------------------------------------
// Validation

/// Pre-validation record as parsed from the external line format.
struct RawAffiliation {
  std::string institution_id;
  std::string country;
};

struct RawRecord {
  std::string doc_id;
  std::int64_t year = 0;
  std::string doc_type;
  std::vector<std::int64_t> disciplines;
  std::vector<RawAffiliation> affiliations;
  std::optional<std::int64_t> corresponding_index;
  std::int64_t citations = 0;
};

enum class ValidationCode {
  EmptyDocId,
  BadDocType,
  EmptyDisciplines,
  BadDiscipline,
  DuplicateDiscipline,
  EmptyAffiliations,
  EmptyInstitution,
  BadCountryCode,
  BadCorrespondingIndex,
  NegativeCitations,
};

inline std::string_view validation_code_name(ValidationCode c) {
  switch (c) {
    case ValidationCode::EmptyDocId: return "EmptyDocId";
    case ValidationCode::BadDocType: return "BadDocType";
    case ValidationCode::EmptyDisciplines: return "EmptyDisciplines";
    case ValidationCode::BadDiscipline: return "BadDiscipline";
    case ValidationCode::DuplicateDiscipline: return "DuplicateDiscipline";
    case ValidationCode::EmptyAffiliations: return "EmptyAffiliations";
    case ValidationCode::EmptyInstitution: return "EmptyInstitution";
    case ValidationCode::BadCountryCode: return "BadCountryCode";
    case ValidationCode::BadCorrespondingIndex: return "BadCorrespondingIndex";
    case ValidationCode::NegativeCitations: return "NegativeCitations";
  }
  return "Unknown";
}

struct ValidationIssue {
  ValidationCode code;
  std::string detail;
};

struct ValidationOutcome {
  std::optional<PublicationRecord> record;  // set iff issues is empty
  std::vector<ValidationIssue> issues;
  bool ok() const { return record.has_value(); }
};

/// Checks every invariant and reports all violations, not just the first.
inline ValidationOutcome validate_record(const RawRecord& raw) {
  ValidationOutcome out;
  auto issue = [&](ValidationCode c, std::string detail) {
    out.issues.push_back({c, std::move(detail)});
  };

  if (raw.doc_id.empty()) issue(ValidationCode::EmptyDocId, "doc_id is empty");

  auto doc_type = parse_doc_type(raw.doc_type);
  if (!doc_type) {
    issue(ValidationCode::BadDocType, "unknown doc_type \"" + raw.doc_type +
                                          "\" (expected article, review, note "
                                          "or short_survey)");
  }

  std::vector<int> disciplines;
  if (raw.disciplines.empty()) {
    issue(ValidationCode::EmptyDisciplines, "disciplines list is empty");
  } else {
    for (auto d : raw.disciplines) {
      if (d < 1 || d > 27) {
        issue(ValidationCode::BadDiscipline,
              "discipline " + std::to_string(d) + " outside [1,27]");
      } else {
        disciplines.push_back(static_cast<int>(d));
      }
    }
    std::sort(disciplines.begin(), disciplines.end());
    if (std::adjacent_find(disciplines.begin(), disciplines.end()) !=
        disciplines.end()) {
      issue(ValidationCode::DuplicateDiscipline, "duplicate discipline id");
    }
  }

  std::vector<Affiliation> affiliations;
  bool affiliations_ok = !raw.affiliations.empty();
  if (raw.affiliations.empty()) {
    issue(ValidationCode::EmptyAffiliations, "affiliations list is empty");
  }
  for (std::size_t i = 0; i < raw.affiliations.size(); ++i) {
    const auto& a = raw.affiliations[i];
    if (a.institution_id.empty()) {
      issue(ValidationCode::EmptyInstitution,
            "affiliations[" + std::to_string(i) + "].institution is empty");
      affiliations_ok = false;
    }
    auto country = CountryCode::parse(a.country);
    if (!country) {
      issue(ValidationCode::BadCountryCode,
            "affiliations[" + std::to_string(i) + "].country \"" + a.country +
                "\" is not a 3-letter uppercase code");
      affiliations_ok = false;
    }
    if (affiliations_ok) affiliations.push_back({a.institution_id, *country});
  }

  if (raw.corresponding_index &&
      (*raw.corresponding_index < 0 ||
       static_cast<std::size_t>(*raw.corresponding_index) >=
           raw.affiliations.size())) {
    issue(ValidationCode::BadCorrespondingIndex,
          "corresponding index " + std::to_string(*raw.corresponding_index) +
              " out of range for " + std::to_string(raw.affiliations.size()) +
              " affiliations");
  }

  if (raw.citations < 0) {
    issue(ValidationCode::NegativeCitations,
          "citations " + std::to_string(raw.citations) + " is negative");
  }

  if (!out.issues.empty()) return out;

  PublicationRecord rec;
  rec.doc_id = raw.doc_id;
  rec.year = static_cast<int>(raw.year);
  rec.doc_type = *doc_type;
  rec.disciplines = std::move(disciplines);
  rec.affiliations = std::move(affiliations);
  if (raw.corresponding_index) {
    rec.corresponding_index = static_cast<std::size_t>(*raw.corresponding_index);
  }
  rec.citations = raw.citations;
  out.record = std::move(rec);
  return out;
}

/// Unique contributing countries, lexicographically ordered.
inline std::vector<CountryCode> distinct_countries(
    const PublicationRecord& record) {
  std::vector<CountryCode> out;
  out.reserve(record.affiliations.size());
  for (const auto& a : record.affiliations) out.push_back(a.country);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Canonical record order: analysis results must not depend on input
/// line order, so every ingestion path sorts by doc_id before
/// aggregation.
inline void canonicalize(Corpus& corpus) {
  std::sort(corpus.records.begin(), corpus.records.end(),
            [](const PublicationRecord& a, const PublicationRecord& b) {
              return a.doc_id < b.doc_id;
            });
}

}  // namespace scimeter
