#include <algorithm>
#include <random>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "scimeter/scimeter.hpp"
#include "testutil.hpp"

using namespace scimeter;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string shuffle_lines(const std::string& text, std::mt19937_64& rng) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  std::shuffle(lines.begin(), lines.end(), rng);
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string table_for(const Corpus& corpus) {
  const auto baselines = build_baselines(corpus);
  return indicator_table_to_text(indicator_table(corpus, baselines));
}

}  // namespace

TEST_CASE("corpus round trip preserves records and tables", "[io]") {
  std::mt19937_64 rng(404);
  const auto cfg = testutil::random_small_config(rng);
  const auto corpus = generate(cfg);
  const auto text = corpus_to_lines(corpus);

  const auto ingest = ingest_corpus_text(text, "test");
  REQUIRE(ingest.ok());
  REQUIRE(ingest.corpus.records.size() == corpus.records.size());
  CHECK(corpus_to_lines(ingest.corpus) == corpus_to_lines([&] {
          auto sorted = corpus;
          canonicalize(sorted);
          return sorted;
        }()));
  CHECK(table_for(ingest.corpus) == table_for(corpus));
}

TEST_CASE("tables are invariant under line permutation and chunked ingestion",
          "[io]") {
  std::mt19937_64 rng(405);
  const auto cfg = testutil::random_small_config(rng);
  const auto text = corpus_to_lines(generate(cfg));

  const auto reference = ingest_corpus_text(text, "test");
  REQUIRE(reference.ok());
  const auto reference_table = table_for(reference.corpus);

  for (int trial = 0; trial < 3; ++trial) {
    const auto shuffled = shuffle_lines(text, rng);
    const auto ingest = ingest_corpus_text(shuffled, "test");
    REQUIRE(ingest.ok());
    CHECK(table_for(ingest.corpus) == reference_table);
  }
  for (unsigned threads : {1u, 2u, 8u}) {
    const auto ingest = ingest_corpus_text(text, "test", threads);
    REQUIRE(ingest.ok());
    CHECK(table_for(ingest.corpus) == reference_table);
  }
}

TEST_CASE("diagnostics carry line numbers", "[io]") {
  const std::string text =
      R"({"doc_id":"a","year":2010,"doc_type":"article","disciplines":[1],"affiliations":[{"institution":"i","country":"NLD"}],"corresponding":0,"citations":1})"
      "\n"
      R"({"doc_id":"b","year":2010,"doc_type":"article","disciplines":[1],"affiliations":[{"institution":"i","country":"Utrecht"}],"citations":1})"
      "\n"
      R"(not json at all)"
      "\n";
  const auto ingest = ingest_corpus_text(text, "test");
  REQUIRE(ingest.diagnostics.size() == 2);
  CHECK(ingest.diagnostics[0].line == 2);
  CHECK_THAT(ingest.diagnostics[0].message, ContainsSubstring("BadCountryCode"));
  CHECK(ingest.diagnostics[1].line == 3);
  CHECK_THAT(ingest.diagnostics[1].message, ContainsSubstring("parse error"));
  CHECK(ingest.valid_records == 1);
  CHECK(ingest.data_lines == 3);
}

TEST_CASE("duplicate doc ids are rejected with both lines named", "[io]") {
  const std::string record =
      R"({"doc_id":"dup","year":2010,"doc_type":"article","disciplines":[1],"affiliations":[{"institution":"i","country":"NLD"}],"citations":0})";
  const auto ingest =
      ingest_corpus_text(record + "\n" + record + "\n", "test");
  REQUIRE(ingest.diagnostics.size() == 1);
  CHECK(ingest.diagnostics[0].line == 2);
  CHECK_THAT(ingest.diagnostics[0].message, ContainsSubstring("duplicate"));
  CHECK_THAT(ingest.diagnostics[0].message, ContainsSubstring("line 1"));
}

TEST_CASE("empty input ingests to an empty corpus", "[io]") {
  const auto ingest = ingest_corpus_text("", "test");
  CHECK(ingest.ok());
  CHECK(ingest.data_lines == 0);
  CHECK(ingest.corpus.records.empty());
}

TEST_CASE("missing corresponding field means unknown, not zero", "[io]") {
  const std::string text =
      R"({"doc_id":"a","year":2010,"doc_type":"article","disciplines":[1],"affiliations":[{"institution":"i","country":"NLD"}],"citations":1})"
      "\n";
  const auto ingest = ingest_corpus_text(text, "test");
  REQUIRE(ingest.ok());
  CHECK_FALSE(ingest.corpus.records[0].corresponding_index.has_value());
}

TEST_CASE("baselines tables round trip bit for bit", "[io]") {
  std::mt19937_64 rng(406);
  const auto cfg = testutil::random_small_config(rng);
  const auto corpus = generate(cfg);
  const auto baselines = build_baselines(corpus);

  const auto text = baselines_to_table(baselines);
  const auto parsed = parse_baselines_table(text, "test");
  REQUIRE(parsed.strata().size() == baselines.strata().size());
  auto it = baselines.strata().begin();
  for (const auto& [key, stats] : parsed.strata()) {
    CHECK(key == it->first);
    CHECK(stats.mean_citations == it->second.mean_citations);
    CHECK(stats.item_mass == it->second.item_mass);
    CHECK(stats.record_count == it->second.record_count);
    ++it;
  }
  CHECK(baselines_to_table(parsed) == text);
}

TEST_CASE("self and reloaded baselines produce identical tables", "[io]") {
  std::mt19937_64 rng(409);
  const auto corpus = generate(testutil::random_small_config(rng));
  const auto self = build_baselines(corpus);
  const auto reloaded = parse_baselines_table(baselines_to_table(self), "test");
  CHECK(indicator_table_to_text(indicator_table(corpus, self)) ==
        indicator_table_to_text(indicator_table(corpus, reloaded)));
}

TEST_CASE("external baselines hit missing strata loudly", "[io]") {
  const auto corpus = testutil::m3_corpus();
  Baselines::Map strata;
  strata[{9, 1999, DocType::Review}] = {1, 1.0, 2.0};
  const Baselines wrong{std::move(strata)};
  CHECK_THROWS_AS(compute_indicators(corpus, wrong), MissingStratumError);
  CHECK_THROWS_WITH(compute_indicators(corpus, wrong),
                    ContainsSubstring("discipline 5"));
}

TEST_CASE("round-trip numeric formatting", "[io]") {
  for (double v : {0.0, 1.0, 1.5, 1.0 / 3.0, 0.1, 123456.789, 1e-9, 2.0 / 7.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(1.5) == "1.5");
}

TEST_CASE("generator config parsing reports field-level problems", "[io]") {
  const std::string good = R"({
    "seed": 7, "years": {"first": 2010, "last": 2011},
    "disciplines_active": [1], "citation_base": {"1": 4.0},
    "ic_boost": 1.5, "ca_discount": 0.8,
    "institutions_per_country": 3, "max_ic_partners": 2,
    "profiles": [
      {"country": "AAA", "papers_per_year": 10, "ic_propensity": 0.5,
       "nc_propensity": 0.2, "ca_share_ic": 0.5,
       "partner_pool_quality": 1.0, "phase": "building_up"},
      {"country": "BBB", "papers_per_year": 10, "ic_propensity": 0.5,
       "nc_propensity": 0.2, "ca_share_ic": 0.5,
       "partner_pool_quality": 1.0, "phase": "building_up"}
    ]})";
  const auto cfg = parse_generator_config(good, "test");
  CHECK(cfg.profiles.size() == 2);
  CHECK(cfg.seed == 7);

  auto expect_problem = [&](std::string broken, const char* needle) {
    try {
      parse_generator_config(broken, "test");
      FAIL("expected InvalidConfigError");
    } catch (const InvalidConfigError& e) {
      CHECK_THAT(e.what(), ContainsSubstring(needle));
    }
  };

  std::string bad = good;
  bad.replace(bad.find("\"ic_propensity\": 0.5"),
              std::string("\"ic_propensity\": 0.5").size(),
              "\"ic_propensity\": 1.3");
  expect_problem(bad, "profiles[0].ic_propensity");

  bad = good;
  bad.replace(bad.find("\"phase\": \"building_up\""),
              std::string("\"phase\": \"building_up\"").size(),
              "\"phase\": \"expanding\"");
  expect_problem(bad, "profiles[0].phase");

  bad = good;
  bad.replace(bad.find("\"ca_discount\": 0.8"),
              std::string("\"ca_discount\": 0.8").size(),
              "\"ca_discount\": 0.0");
  expect_problem(bad, "ca_discount");
}

TEST_CASE("figure data files for the micro corpus", "[io]") {
  const auto corpus = testutil::m3_corpus();
  const auto baselines = build_baselines(corpus);
  const auto rows = indicator_table(corpus, baselines);

  const auto fig5 = figure_data(rows, "fig5");
  CHECK_THAT(fig5, ContainsSubstring("1.25\t1.25\tAAA"));
  CHECK_THAT(fig5, ContainsSubstring("1.25\t0.5\tBBB"));

  const auto fig3 = figure_data(rows, "fig3", /*exclusive=*/true);
  CHECK_THAT(fig3, ContainsSubstring("AAA\t50\t0\t50"));

  const auto fig7 = figure_data(rows, "fig7");
  CHECK_THAT(fig7, ContainsSubstring("BBB\tNA\t2\t2"));

  CHECK_THROWS_AS(figure_data(rows, "fig2"), UnknownFigureSpecError);
  CHECK_THROWS_AS(figure_data(rows, "nonsense"), UnknownFigureSpecError);
}

TEST_CASE("scatter figures drop undefined rows", "[io]") {
  Corpus corpus;
  corpus.records.push_back(
      testutil::make_record("p1", {{"a", "CCC"}}, 0, 2));
  corpus.records.push_back(
      testutil::make_record("p2", {{"a", "CCC"}}, 0, 4));
  const auto baselines = build_baselines(corpus);
  const auto rows = indicator_table(corpus, baselines);
  const auto fig8 = figure_data(rows, "fig8");  // no IC papers anywhere
  CHECK(fig8 == "pct_ca_ic\tni_ic\tcountry\n");
}

TEST_CASE("correlation over indicator fields", "[io]") {
  std::mt19937_64 rng(407);
  GeneratorConfig cfg = testutil::random_small_config(rng);
  while (cfg.profiles.size() < 3) {
    cfg = testutil::random_small_config(rng);
  }
  const auto corpus = generate(cfg);
  const auto baselines = build_baselines(corpus);
  const auto rows = indicator_table(corpus, baselines);

  const auto report = correlate_fields(rows, "ni_all", "ni_ca");
  CHECK(report.n + report.dropped == static_cast<std::int64_t>(rows.size()));
  REQUIRE(report.r.has_value());
  CHECK(*report.r >= -1.0);
  CHECK(*report.r <= 1.0);
  REQUIRE(report.p_value.has_value());

  CHECK_THROWS_AS(correlate_fields({rows[0], rows[1]}, "pct_ic", "pct_ca"),
                  TooFewPointsError);
}

TEST_CASE("zero-variance correlations are reported as undefined", "[io]") {
  std::mt19937_64 rng(408);
  auto cfg = testutil::random_small_config(rng);
  while (cfg.profiles.size() < 3) {
    cfg = testutil::random_small_config(rng);
  }
  for (auto& p : cfg.profiles) p.ic_propensity = 0.0;
  const auto corpus = generate(cfg);
  const auto baselines = build_baselines(corpus);
  const auto rows = indicator_table(corpus, baselines);

  const auto report = correlate_fields(rows, "pct_ic", "pct_ca");
  CHECK_FALSE(report.r.has_value());   // both columns constant
  CHECK_FALSE(report.p_value.has_value());
  CHECK(report.n == static_cast<std::int64_t>(rows.size()));
}

TEST_CASE("metadata blocks render in insertion order", "[io]") {
  Metadata meta;
  meta.set("command", "indicators");
  meta.set("records", std::int64_t{42});
  meta.set("threshold", 2.5);
  CHECK(meta.to_text() == "command: indicators\nrecords: 42\nthreshold: 2.5\n");
}
