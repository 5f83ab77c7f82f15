#pragma once

// Field-year-doctype citation baselines and per-item normalized scores.
//
// Baselines are item-oriented: the expected citation count of a stratum
// (discipline, year, doc_type) is the mean citation count of the items in
// it, where a record with k disciplines contributes mass 1/k of itself and
// 1/k of its citations to each of its k strata. Accumulation is exact: the
// 1/k fractions are kept as integer numerators over lcm(1..27) in 128-bit
// accumulators, so building baselines is order-invariant bit for bit.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "scimeter/corpus.hpp"
#include "scimeter/detail/accum.hpp"

namespace scimeter {

struct StratumKey {
  int discipline = 0;
  int year = 0;
  DocType doc_type = DocType::Article;
  auto operator<=>(const StratumKey&) const = default;
};

inline std::string stratum_label(const StratumKey& key) {
  return "(discipline " + std::to_string(key.discipline) + ", year " +
         std::to_string(key.year) + ", " + std::string(doc_type_name(key.doc_type)) +
         ")";
}

class MissingStratumError : public Error {
 public:
  explicit MissingStratumError(const StratumKey& key)
      : Error("no baseline stratum " + stratum_label(key)), stratum(key) {}
  StratumKey stratum;
};

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("corpus has no records") {}
};

struct StratumStats {
  std::int64_t record_count = 0;  // records touching the stratum
  double item_mass = 0.0;         // fractional item mass (sum of 1/k)
  double mean_citations = 0.0;
};

class Baselines {
 public:
  using Map = std::map<StratumKey, StratumStats>;

  Baselines() = default;
  explicit Baselines(Map strata) : strata_(std::move(strata)) {}

  const StratumStats* find(const StratumKey& key) const {
    auto it = strata_.find(key);
    return it == strata_.end() ? nullptr : &it->second;
  }

  /// Throws MissingStratumError naming the stratum.
  const StratumStats& at(const StratumKey& key) const {
    const auto* s = find(key);
    if (!s) throw MissingStratumError(key);
    return *s;
  }

  const Map& strata() const { return strata_; }
  bool empty() const { return strata_.empty(); }

 private:
  Map strata_;
};

inline Baselines build_baselines(const Corpus& corpus) {
  if (corpus.records.empty()) throw EmptyCorpusError();

  struct Acc {
    std::int64_t records = 0;
    detail::uint128 item_num = 0;      // units of 1/kMassDenominator
    detail::uint128 citation_num = 0;  // same units
  };
  std::map<StratumKey, Acc> acc;

  for (const auto& r : corpus.records) {
    const auto k = static_cast<std::uint64_t>(r.disciplines.size());
    const std::uint64_t share = detail::kMassDenominator / k;  // exact, k <= 27
    for (int d : r.disciplines) {
      auto& a = acc[{d, r.year, r.doc_type}];
      a.records += 1;
      a.item_num += share;
      a.citation_num += detail::uint128(r.citations) * share;
    }
  }

  Baselines::Map strata;
  for (const auto& [key, a] : acc) {
    StratumStats s;
    s.record_count = a.records;
    s.item_mass = static_cast<double>(a.item_num) /
                  static_cast<double>(detail::kMassDenominator);
    s.mean_citations =
        static_cast<double>(a.citation_num) / static_cast<double>(a.item_num);
    strata.emplace(key, s);
  }
  return Baselines(std::move(strata));
}

/// Arithmetic mean of the record's stratum means. Undefined (nullopt) when
/// that mean is zero: a zero-mean stratum set implies every citation count
/// in it is zero. Throws MissingStratumError when a stratum is absent.
inline std::optional<double> expected_citations(const PublicationRecord& record,
                                                const Baselines& baselines) {
  double sum = 0.0;
  for (int d : record.disciplines) {
    sum += baselines.at({d, record.year, record.doc_type}).mean_citations;
  }
  const double mean = sum / static_cast<double>(record.disciplines.size());
  if (mean == 0.0) return std::nullopt;
  return mean;
}

/// Citations over expected citations. nullopt means the item is excluded
/// (zero-mean strata); callers skip excluded items and report their count.
inline std::optional<double> normalized_score(const PublicationRecord& record,
                                              const Baselines& baselines) {
  const auto expected = expected_citations(record, baselines);
  if (!expected) return std::nullopt;
  return static_cast<double>(record.citations) / *expected;
}

/// Weighted mean of scores: sum(w*s) / sum(w); undefined when the weight
/// mass is zero.
inline std::optional<double> ni(
    std::span<const std::pair<double, double>> items /* (score, weight) */) {
  detail::CompensatedSum num, den;
  for (const auto& [score, weight] : items) {
    num.add(weight * score);
    den.add(weight);
  }
  if (den.value() == 0.0) return std::nullopt;
  return num.value() / den.value();
}

}  // namespace scimeter
