#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "scimeter/classification.hpp"
#include "testutil.hpp"

using namespace scimeter;
using testutil::make_record;

TEST_CASE("single institution is neither international nor national",
          "[classification]") {
  const auto flags = classify(make_record("p", {{"a", "NLD"}}, 0, 0));
  CHECK_FALSE(flags.international);
  CHECK_FALSE(flags.national);
  CHECK(flags.single_institution);
}

TEST_CASE("two domestic institutions make a national collaboration",
          "[classification]") {
  const auto flags =
      classify(make_record("p", {{"a", "NLD"}, {"b", "NLD"}}, 0, 0));
  CHECK_FALSE(flags.international);
  CHECK(flags.national);
  CHECK_FALSE(flags.single_institution);
}

TEST_CASE("domestic plus foreign links set both flags", "[classification]") {
  const auto flags = classify(
      make_record("p", {{"a", "NLD"}, {"b", "DEU"}, {"c", "NLD"}}, 0, 0));
  CHECK(flags.international);
  CHECK(flags.national);
  CHECK_FALSE(flags.single_institution);
}

TEST_CASE("one institution per country is international only",
          "[classification]") {
  const auto flags =
      classify(make_record("p", {{"a", "USA"}, {"b", "DEU"}}, 0, 0));
  CHECK(flags.international);
  CHECK_FALSE(flags.national);
  CHECK_FALSE(flags.single_institution);
}

TEST_CASE("same institution id in two countries is two pairs",
          "[classification]") {
  const auto flags =
      classify(make_record("p", {{"a", "USA"}, {"a", "DEU"}}, 0, 0));
  CHECK(flags.international);
  CHECK_FALSE(flags.national);
  CHECK_FALSE(flags.single_institution);
}

TEST_CASE("duplicate affiliation entries still count as one institution",
          "[classification]") {
  const auto flags =
      classify(make_record("p", {{"a", "NLD"}, {"a", "NLD"}}, 0, 0));
  CHECK(flags.single_institution);
  CHECK_FALSE(flags.national);
}

TEST_CASE("at least one flag is always set", "[classification]") {
  std::mt19937_64 rng(42);
  const char* countries[] = {"AAA", "BBB", "CCC"};
  const char* institutions[] = {"i1", "i2", "i3"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::string, const char*>> affs;
    const auto n = 1 + rng() % 4;
    for (std::uint64_t i = 0; i < n; ++i) {
      affs.push_back({institutions[rng() % 3], countries[rng() % 3]});
    }
    const auto flags = classify(make_record("p", affs, std::nullopt, 0));
    CHECK((flags.international || flags.national || flags.single_institution));
    if (flags.single_institution) {
      CHECK_FALSE(flags.international);
      CHECK_FALSE(flags.national);
    }
  }
}

TEST_CASE("classify is invariant under affiliation permutation",
          "[classification]") {
  std::mt19937_64 rng(43);
  auto record = make_record(
      "p", {{"a", "NLD"}, {"b", "DEU"}, {"c", "NLD"}, {"d", "JPN"}}, std::nullopt,
      0);
  const auto reference = classify(record);
  for (int trial = 0; trial < 30; ++trial) {
    std::shuffle(record.affiliations.begin(), record.affiliations.end(), rng);
    const auto flags = classify(record);
    CHECK(flags.international == reference.international);
    CHECK(flags.national == reference.national);
    CHECK(flags.single_institution == reference.single_institution);
  }
}

TEST_CASE("corresponding country is a direct positional lookup",
          "[classification]") {
  CHECK(corresponding_country(make_record(
            "p", {{"a", "USA"}, {"b", "DEU"}}, 1, 0)) == CountryCode::of("DEU"));
  CHECK_FALSE(corresponding_country(
                  make_record("p", {{"a", "USA"}}, std::nullopt, 0))
                  .has_value());
  CHECK(corresponding_country(make_record("p", {{"a", "FRA"}}, 0, 0)) ==
        CountryCode::of("FRA"));
}

TEST_CASE("corresponding authorship matches exactly one country",
          "[classification]") {
  const auto record =
      make_record("p", {{"a", "USA"}, {"b", "DEU"}, {"c", "JPN"}}, 1, 0);
  CHECK(has_corresponding_authorship(record, CountryCode::of("DEU")));
  CHECK_FALSE(has_corresponding_authorship(record, CountryCode::of("USA")));

  int holders = 0;
  for (const auto& c : distinct_countries(record)) {
    if (has_corresponding_authorship(record, c)) holders += 1;
  }
  CHECK(holders == 1);

  const auto unknown =
      make_record("p", {{"a", "USA"}, {"b", "DEU"}}, std::nullopt, 0);
  for (const auto& c : distinct_countries(unknown)) {
    CHECK_FALSE(has_corresponding_authorship(unknown, c));
  }
}
