#pragma once

// Deterministic synthetic corpus generator.
//
// Each (country, year, index) record draws from its own counter-based
// stream, so blocks can be produced in any order with identical output and
// raising one propensity re-uses the same underlying uniforms record by
// record.
//
// Stream construction (all arithmetic in uint64):
//   mix(z)    = splitmix64 finalizer:
//               z += 0x9E3779B97F4A7C15; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//               z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
//   key       = mix(mix(mix(seed ^ country_ordinal) ^ year) ^ index)
//   draw i    = mix(key + i * 0x9E3779B97F4A7C15)
//   unit      = (draw >> 11) * 2^-53                       in [0,1)
//   below(b)  = draw % b
// where country_ordinal = 26^2*(c0-'A') + 26*(c1-'A') + (c2-'A') + 1.
//
// Per-record draw order: collaboration uniform; [IC: partner count,
// partner picks (size-weighted, re-drawn until distinct), CA uniform,
// partner CA pick, institutions]; [non-IC: national uniform,
// institutions]; discipline pick; citation walk.
//
// Citation counts follow a geometric distribution (negative binomial with
// dispersion 1.0) with mean
//   base(discipline)                                   for non-IC records
//   base * ic_boost * prod(pool quality of participants)
//        * (ca_discount if the corresponding country has strictly fewer
//           papers_per_year than the largest co-participant)
// for IC records. The discount models regionally led collaboration: work
// led by the smaller side of a partnership is cited less. Sampling walks
// the CDF with plain IEEE multiplies, so output is reproducible across
// platforms.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scimeter/corpus.hpp"

namespace scimeter {

class InvalidConfigError : public Error {
 public:
  explicit InvalidConfigError(std::vector<std::string> problems)
      : Error(join(problems)), issues(std::move(problems)) {}
  std::vector<std::string> issues;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid generator config:";
    for (const auto& p : v) s += "\n  - " + p;
    return s;
  }
};

enum class PhaseLabel {
  PreDevelopment,
  BuildingUp,
  ConsolidationExpansion,
  Internationalization,
};

inline std::string_view phase_label_name(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::PreDevelopment: return "pre_development";
    case PhaseLabel::BuildingUp: return "building_up";
    case PhaseLabel::ConsolidationExpansion: return "consolidation_expansion";
    case PhaseLabel::Internationalization: return "internationalization";
  }
  return "pre_development";
}

inline std::optional<PhaseLabel> parse_phase_label(std::string_view s) {
  if (s == "pre_development") return PhaseLabel::PreDevelopment;
  if (s == "building_up") return PhaseLabel::BuildingUp;
  if (s == "consolidation_expansion") return PhaseLabel::ConsolidationExpansion;
  if (s == "internationalization") return PhaseLabel::Internationalization;
  return std::nullopt;
}

struct CountryProfile {
  CountryCode country = CountryCode::of("AAA");
  int papers_per_year = 1;
  double ic_propensity = 0.0;   // P(record is internationally co-authored)
  double nc_propensity = 0.0;   // P(non-IC record is nationally collaborative)
  double ca_share_ic = 0.0;     // P(country keeps CA on its IC records)
  double partner_pool_quality = 1.0;
  PhaseLabel phase_label = PhaseLabel::PreDevelopment;
};

struct YearRange {
  int first = 0;
  int last = 0;  // inclusive
};

struct GeneratorConfig {
  std::vector<CountryProfile> profiles;
  YearRange years;
  std::vector<int> disciplines_active;
  std::map<int, double> citation_base;  // discipline -> mean citations
  double ic_boost = 1.0;
  double ca_discount = 1.0;  // in (0,1]
  std::uint64_t seed = 0;
  int institutions_per_country = 1;
  int max_ic_partners = 2;  // countries per IC record, in [2,5]
};

inline std::vector<std::string> validate_config(const GeneratorConfig& cfg) {
  std::vector<std::string> problems;
  auto bad = [&](std::string msg) { problems.push_back(std::move(msg)); };

  if (cfg.profiles.empty()) bad("profiles: must be non-empty");
  std::map<CountryCode, int> seen;
  for (std::size_t i = 0; i < cfg.profiles.size(); ++i) {
    const auto& p = cfg.profiles[i];
    const std::string at = "profiles[" + std::to_string(i) + "]";
    if (auto dup = seen.find(p.country); dup != seen.end()) {
      bad(at + ".country: duplicate code " + p.country.str());
    }
    seen.emplace(p.country, static_cast<int>(i));
    if (p.papers_per_year < 1) bad(at + ".papers_per_year: must be >= 1");
    auto prob = [&](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) {
        bad(at + "." + name + ": must be in [0,1] (got " + std::to_string(v) +
            ")");
      }
    };
    prob(p.ic_propensity, "ic_propensity");
    prob(p.nc_propensity, "nc_propensity");
    prob(p.ca_share_ic, "ca_share_ic");
    if (!(p.partner_pool_quality >= 0.0)) {
      bad(at + ".partner_pool_quality: must be >= 0");
    }
  }
  if (cfg.years.first > cfg.years.last) {
    bad("years: first must be <= last");
  }
  if (cfg.disciplines_active.empty()) {
    bad("disciplines_active: must be non-empty");
  }
  for (int d : cfg.disciplines_active) {
    if (d < 1 || d > 27) {
      bad("disciplines_active: discipline " + std::to_string(d) +
          " outside [1,27]");
    } else if (!cfg.citation_base.contains(d)) {
      bad("citation_base: missing mean for discipline " + std::to_string(d));
    }
  }
  for (const auto& [d, mean] : cfg.citation_base) {
    if (!(mean >= 0.0)) {
      bad("citation_base[" + std::to_string(d) + "]: must be >= 0");
    }
  }
  if (!(cfg.ic_boost >= 0.0)) bad("ic_boost: must be >= 0");
  if (!(cfg.ca_discount > 0.0 && cfg.ca_discount <= 1.0)) {
    bad("ca_discount: must be in (0,1]");
  }
  if (cfg.institutions_per_country < 1) {
    bad("institutions_per_country: must be >= 1");
  }
  if (cfg.max_ic_partners < 2 || cfg.max_ic_partners > 5) {
    bad("max_ic_partners: must be in [2,5]");
  }
  return problems;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t country_ordinal(CountryCode c) {
  const std::string s = c.str();
  return 676ULL * static_cast<std::uint64_t>(s[0] - 'A') +
         26ULL * static_cast<std::uint64_t>(s[1] - 'A') +
         static_cast<std::uint64_t>(s[2] - 'A') + 1ULL;
}

// Counter-based per-record stream.
class RecordStream {
 public:
  RecordStream(std::uint64_t seed, CountryCode country, int year, int index)
      : key_(mix64(mix64(mix64(seed ^ country_ordinal(country)) ^
                         static_cast<std::uint64_t>(year)) ^
                   static_cast<std::uint64_t>(index))) {}

  std::uint64_t next_u64() {
    return mix64(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL);
  }
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  std::uint64_t next_below(std::uint64_t bound) {
    return next_u64() % bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Geometric draw with the given mean via an explicit CDF walk:
// P(k) = p * q^k with q = mean/(1+mean).
inline std::int64_t draw_citations(RecordStream& rng, double mean) {
  if (mean <= 0.0) {
    rng.next_unit();  // keep the stream aligned with the mean > 0 path
    return 0;
  }
  const double q = mean / (1.0 + mean);
  const double u = rng.next_unit();
  double pk = 1.0 - q;  // P(0)
  double cdf = pk;
  std::int64_t k = 0;
  while (u >= cdf && pk > 1e-300 && k < 1'000'000) {
    pk *= q;
    cdf += pk;
    k += 1;
  }
  return k;
}

}  // namespace detail

/// Phase templates with illustrative defaults; country and papers_per_year
/// are placeholders for the caller to override.
inline std::vector<CountryProfile> phase_presets() {
  std::vector<CountryProfile> presets;
  presets.push_back({CountryCode::of("AAA"), 20, 0.80, 0.25, 0.20, 0.80,
                     PhaseLabel::PreDevelopment});
  presets.push_back({CountryCode::of("AAA"), 90, 0.70, 0.30, 0.30, 0.90,
                     PhaseLabel::BuildingUp});
  presets.push_back({CountryCode::of("AAA"), 220, 0.25, 0.45, 0.65, 1.00,
                     PhaseLabel::ConsolidationExpansion});
  presets.push_back({CountryCode::of("AAA"), 320, 0.55, 0.40, 0.50, 1.50,
                     PhaseLabel::Internationalization});
  return presets;
}

inline Corpus generate(const GeneratorConfig& cfg) {
  if (auto problems = validate_config(cfg); !problems.empty()) {
    throw InvalidConfigError(std::move(problems));
  }

  const auto& profiles = cfg.profiles;
  const int n_disc = static_cast<int>(cfg.disciplines_active.size());

  auto institution = [&](CountryCode c, std::uint64_t idx) {
    std::string id = c.str() + "-";
    const std::string num = std::to_string(idx);
    id.append(3 - std::min<std::size_t>(3, num.size()), '0');
    id += num;
    return id;
  };

  Corpus corpus;
  corpus.census_note =
      "synthetic corpus (seed " + std::to_string(cfg.seed) + ")";

  for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
    const auto& profile = profiles[pi];
    const auto inst_count =
        static_cast<std::uint64_t>(cfg.institutions_per_country);

    for (int year = cfg.years.first; year <= cfg.years.last; ++year) {
      for (int index = 0; index < profile.papers_per_year; ++index) {
        detail::RecordStream rng(cfg.seed, profile.country, year, index);

        PublicationRecord rec;
        {
          std::string num = std::to_string(index);
          rec.doc_id = profile.country.str() + "-" + std::to_string(year) +
                       "-" + std::string(5 - std::min<std::size_t>(5, num.size()), '0') +
                       num;
        }
        rec.year = year;
        rec.doc_type = DocType::Article;

        const bool ic =
            profiles.size() >= 2 && rng.next_unit() < profile.ic_propensity;
        std::vector<const CountryProfile*> partners;
        bool ca_is_self = true;
        std::size_t ca_partner = 0;

        if (ic) {
          std::size_t partner_count = 1;
          if (cfg.max_ic_partners > 2) {
            const auto limit = std::min<std::size_t>(
                static_cast<std::size_t>(cfg.max_ic_partners) - 1,
                profiles.size() - 1);
            partner_count = 1 + rng.next_below(limit);
          }
          // Size-weighted picks among the other profiles, re-drawn until
          // distinct.
          std::uint64_t pool = 0;
          for (std::size_t j = 0; j < profiles.size(); ++j) {
            if (j != pi) pool += static_cast<std::uint64_t>(
                              profiles[j].papers_per_year);
          }
          while (partners.size() < partner_count) {
            std::uint64_t t = rng.next_below(pool);
            const CountryProfile* pick = nullptr;
            for (std::size_t j = 0; j < profiles.size(); ++j) {
              if (j == pi) continue;
              const auto w =
                  static_cast<std::uint64_t>(profiles[j].papers_per_year);
              if (t < w) {
                pick = &profiles[j];
                break;
              }
              t -= w;
            }
            bool dup = false;
            for (const auto* p : partners) dup = dup || p == pick;
            if (!dup) partners.push_back(pick);
          }

          ca_is_self = rng.next_unit() < profile.ca_share_ic;
          ca_partner = rng.next_below(partners.size());

          rec.affiliations.push_back(
              {institution(profile.country, rng.next_below(inst_count)),
               profile.country});
          for (const auto* p : partners) {
            rec.affiliations.push_back(
                {institution(p->country, rng.next_below(inst_count)),
                 p->country});
          }
          rec.corresponding_index = ca_is_self ? 0 : 1 + ca_partner;
        } else {
          const bool nc = rng.next_unit() < profile.nc_propensity &&
                          cfg.institutions_per_country >= 2;
          if (nc) {
            const auto i1 = rng.next_below(inst_count);
            auto i2 = rng.next_below(inst_count - 1);
            if (i2 >= i1) i2 += 1;
            rec.affiliations.push_back(
                {institution(profile.country, i1), profile.country});
            rec.affiliations.push_back(
                {institution(profile.country, i2), profile.country});
          } else {
            rec.affiliations.push_back(
                {institution(profile.country, rng.next_below(inst_count)),
                 profile.country});
          }
          rec.corresponding_index = 0;
        }

        const int discipline =
            cfg.disciplines_active[rng.next_below(
                static_cast<std::uint64_t>(n_disc))];
        rec.disciplines = {discipline};

        double mean = cfg.citation_base.at(discipline);
        if (ic) {
          mean *= cfg.ic_boost;
          mean *= profile.partner_pool_quality;
          int max_partner_ppy = 0;
          for (const auto* p : partners) {
            mean *= p->partner_pool_quality;
            max_partner_ppy = std::max(max_partner_ppy, p->papers_per_year);
          }
          const CountryProfile* leader =
              ca_is_self ? &profile : partners[ca_partner];
          int max_other_ppy = ca_is_self ? max_partner_ppy : profile.papers_per_year;
          if (!ca_is_self) {
            for (const auto* p : partners) {
              if (p != leader) {
                max_other_ppy = std::max(max_other_ppy, p->papers_per_year);
              }
            }
          }
          if (leader->papers_per_year < max_other_ppy) {
            mean *= cfg.ca_discount;
          }
        }
        rec.citations = detail::draw_citations(rng, mean);

        corpus.records.push_back(std::move(rec));
      }
    }
  }
  return corpus;
}

}  // namespace scimeter
