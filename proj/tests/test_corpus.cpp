#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "scimeter/corpus.hpp"
#include "testutil.hpp"

using namespace scimeter;

namespace {

RawRecord minimal_raw() {
  RawRecord raw;
  raw.doc_id = "p1";
  raw.year = 2010;
  raw.doc_type = "article";
  raw.disciplines = {3};
  raw.affiliations = {{"inst-a", "NLD"}};
  raw.corresponding_index = 0;
  raw.citations = 0;
  return raw;
}

bool has_code(const ValidationOutcome& out, ValidationCode code) {
  return std::any_of(out.issues.begin(), out.issues.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

}  // namespace

TEST_CASE("country codes parse strictly", "[corpus]") {
  CHECK(CountryCode::parse("NLD").has_value());
  CHECK(CountryCode::parse("NLD")->str() == "NLD");
  CHECK_FALSE(CountryCode::parse("NL").has_value());
  CHECK_FALSE(CountryCode::parse("NLDX").has_value());
  CHECK_FALSE(CountryCode::parse("nld").has_value());
  CHECK_FALSE(CountryCode::parse("N1D").has_value());
  CHECK_FALSE(CountryCode::parse("").has_value());
}

TEST_CASE("doc types form a closed enumeration", "[corpus]") {
  CHECK(parse_doc_type("article") == DocType::Article);
  CHECK(parse_doc_type("review") == DocType::Review);
  CHECK(parse_doc_type("note") == DocType::Note);
  CHECK(parse_doc_type("short_survey") == DocType::ShortSurvey);
  CHECK_FALSE(parse_doc_type("letter").has_value());
  CHECK_FALSE(parse_doc_type("Article").has_value());
}

TEST_CASE("minimal legal record validates", "[corpus]") {
  const auto out = validate_record(minimal_raw());
  REQUIRE(out.ok());
  CHECK(out.record->doc_id == "p1");
  CHECK(out.record->disciplines == std::vector<int>{3});
  CHECK(out.record->corresponding_index == 0);
}

TEST_CASE("empty disciplines is rejected", "[corpus]") {
  auto raw = minimal_raw();
  raw.disciplines.clear();
  const auto out = validate_record(raw);
  CHECK_FALSE(out.ok());
  CHECK(has_code(out, ValidationCode::EmptyDisciplines));
}

TEST_CASE("corresponding index must address an affiliation", "[corpus]") {
  auto raw = minimal_raw();
  raw.affiliations = {{"a", "NLD"}, {"b", "DEU"}};
  raw.corresponding_index = 2;
  CHECK(has_code(validate_record(raw), ValidationCode::BadCorrespondingIndex));
  raw.corresponding_index = -1;
  CHECK(has_code(validate_record(raw), ValidationCode::BadCorrespondingIndex));
  raw.corresponding_index = 1;
  CHECK(validate_record(raw).ok());
}

TEST_CASE("every violated invariant is reported, not just the first",
          "[corpus]") {
  auto raw = minimal_raw();
  raw.disciplines = {99};
  raw.citations = -2;
  raw.affiliations = {{"a", "Netherlands"}};
  raw.doc_type = "poster";
  const auto out = validate_record(raw);
  CHECK_FALSE(out.ok());
  CHECK(has_code(out, ValidationCode::BadDiscipline));
  CHECK(has_code(out, ValidationCode::NegativeCitations));
  CHECK(has_code(out, ValidationCode::BadCountryCode));
  CHECK(has_code(out, ValidationCode::BadDocType));
  CHECK(out.issues.size() == 4);
}

TEST_CASE("remaining invariants are enforced individually", "[corpus]") {
  auto raw = minimal_raw();
  raw.doc_id = "";
  CHECK(has_code(validate_record(raw), ValidationCode::EmptyDocId));

  raw = minimal_raw();
  raw.affiliations.clear();
  CHECK(has_code(validate_record(raw), ValidationCode::EmptyAffiliations));

  raw = minimal_raw();
  raw.affiliations = {{"", "NLD"}};
  CHECK(has_code(validate_record(raw), ValidationCode::EmptyInstitution));

  raw = minimal_raw();
  raw.disciplines = {4, 4};
  CHECK(has_code(validate_record(raw), ValidationCode::DuplicateDiscipline));

  raw = minimal_raw();
  raw.disciplines = {0};
  CHECK(has_code(validate_record(raw), ValidationCode::BadDiscipline));
  raw.disciplines = {28};
  CHECK(has_code(validate_record(raw), ValidationCode::BadDiscipline));
}

TEST_CASE("disciplines come out sorted and deduped input is preserved",
          "[corpus]") {
  auto raw = minimal_raw();
  raw.disciplines = {9, 2, 27};
  const auto out = validate_record(raw);
  REQUIRE(out.ok());
  CHECK(out.record->disciplines == std::vector<int>{2, 9, 27});
}

TEST_CASE("distinct_countries collapses duplicates and orders", "[corpus]") {
  using testutil::make_record;
  auto r = make_record("d1", {{"a", "NLD"}, {"b", "NLD"}}, std::nullopt, 0);
  CHECK(distinct_countries(r) == std::vector<CountryCode>{CountryCode::of("NLD")});

  r = make_record("d2", {{"a", "USA"}, {"b", "DEU"}, {"c", "USA"}},
                  std::nullopt, 0);
  CHECK(distinct_countries(r) ==
        std::vector<CountryCode>{CountryCode::of("DEU"), CountryCode::of("USA")});

  r = make_record("d3", {{"a", "FRA"}}, std::nullopt, 0);
  CHECK(distinct_countries(r) == std::vector<CountryCode>{CountryCode::of("FRA")});
}

TEST_CASE("distinct_countries is order-insensitive and idempotent",
          "[corpus]") {
  std::mt19937_64 rng(7);
  auto record = testutil::make_record(
      "d", {{"a", "USA"}, {"b", "DEU"}, {"c", "USA"}, {"d", "JPN"}, {"e", "DEU"}},
      std::nullopt, 3);
  const auto reference = distinct_countries(record);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(record.affiliations.begin(), record.affiliations.end(), rng);
    CHECK(distinct_countries(record) == reference);
  }
}

TEST_CASE("random single-field mutations flip acceptance exactly when an "
          "invariant breaks",
          "[corpus]") {
  std::mt19937_64 rng(20100501);
  std::uniform_int_distribution<int> pick(0, 6);
  for (int trial = 0; trial < 500; ++trial) {
    auto raw = minimal_raw();
    raw.affiliations = {{"a", "NLD"}, {"b", "DEU"}};
    raw.disciplines = {1, 7};
    raw.corresponding_index = 1;

    bool broke = false;
    switch (pick(rng)) {
      case 0:
        raw.citations = -1 - static_cast<std::int64_t>(rng() % 10);
        broke = true;
        break;
      case 1:
        raw.disciplines.push_back(28 + static_cast<int>(rng() % 5));
        broke = true;
        break;
      case 2:
        raw.corresponding_index = 2 + static_cast<std::int64_t>(rng() % 3);
        broke = true;
        break;
      case 3:
        raw.affiliations[rng() % 2].country = "xx";
        broke = true;
        break;
      case 4:  // legal mutations
        raw.citations = static_cast<std::int64_t>(rng() % 100);
        break;
      case 5:
        raw.disciplines = {static_cast<std::int64_t>(1 + rng() % 27)};
        break;
      case 6:
        raw.corresponding_index.reset();
        break;
    }
    CHECK(validate_record(raw).ok() == !broke);
  }
}
