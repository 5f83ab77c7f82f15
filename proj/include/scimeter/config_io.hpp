#pragma once

// Generator configuration file (JSON, human-editable):
//
// {
//   "seed": 271828,
//   "years": {"first": 2003, "last": 2015},
//   "disciplines_active": [1, 5, 9],
//   "citation_base": {"1": 6.0, "5": 4.5, "9": 8.0},
//   "ic_boost": 1.8,
//   "ca_discount": 0.75,
//   "institutions_per_country": 12,
//   "max_ic_partners": 2,
//   "profiles": [
//     {"country": "AAA", "papers_per_year": 320, "ic_propensity": 0.55,
//      "nc_propensity": 0.4, "ca_share_ic": 0.5,
//      "partner_pool_quality": 1.5, "phase": "internationalization"}
//   ]
// }

#include <string>
#include <vector>

#include <json.hpp>

#include "scimeter/record_io.hpp"
#include "scimeter/synthgen.hpp"

namespace scimeter {

inline GeneratorConfig parse_generator_config(std::string_view text,
                                              const std::string& origin) {
  std::vector<std::string> problems;
  auto bad = [&](std::string msg) { problems.push_back(std::move(msg)); };

  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InvalidConfigError({origin + ": not a JSON object"});
  }

  GeneratorConfig cfg;
  auto need = [&](const char* key) -> const nlohmann::json* {
    if (!j.contains(key)) {
      bad(std::string(key) + ": missing");
      return nullptr;
    }
    return &j[key];
  };

  if (const auto* v = need("seed")) {
    if (v->is_number_unsigned() || v->is_number_integer()) {
      cfg.seed = v->get<std::uint64_t>();
    } else {
      bad("seed: expected an integer");
    }
  }
  if (const auto* v = need("years")) {
    if (v->is_object() && v->contains("first") && v->contains("last") &&
        (*v)["first"].is_number_integer() && (*v)["last"].is_number_integer()) {
      cfg.years = {(*v)["first"].get<int>(), (*v)["last"].get<int>()};
    } else {
      bad("years: expected {\"first\": y0, \"last\": y1}");
    }
  }
  if (const auto* v = need("disciplines_active")) {
    if (v->is_array()) {
      for (const auto& d : *v) {
        if (d.is_number_integer()) {
          cfg.disciplines_active.push_back(d.get<int>());
        } else {
          bad("disciplines_active: expected integers");
        }
      }
    } else {
      bad("disciplines_active: expected an array");
    }
  }
  if (const auto* v = need("citation_base")) {
    if (v->is_object()) {
      for (const auto& [key, val] : v->items()) {
        int d = 0;
        try {
          d = std::stoi(key);
        } catch (const std::exception&) {
          bad("citation_base: key \"" + key + "\" is not a discipline id");
          continue;
        }
        if (val.is_number()) {
          cfg.citation_base[d] = val.get<double>();
        } else {
          bad("citation_base[" + key + "]: expected a number");
        }
      }
    } else {
      bad("citation_base: expected an object keyed by discipline id");
    }
  }

  auto opt_number = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (j[key].is_number()) {
      slot = j[key].get<double>();
    } else {
      bad(std::string(key) + ": expected a number");
    }
  };
  auto opt_int = [&](const char* key, int& slot) {
    if (!j.contains(key)) return;
    if (j[key].is_number_integer()) {
      slot = j[key].get<int>();
    } else {
      bad(std::string(key) + ": expected an integer");
    }
  };
  opt_number("ic_boost", cfg.ic_boost);
  opt_number("ca_discount", cfg.ca_discount);
  opt_int("institutions_per_country", cfg.institutions_per_country);
  opt_int("max_ic_partners", cfg.max_ic_partners);

  if (const auto* v = need("profiles")) {
    if (!v->is_array()) {
      bad("profiles: expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const auto& p = (*v)[i];
        const std::string at = "profiles[" + std::to_string(i) + "]";
        if (!p.is_object()) {
          bad(at + ": expected an object");
          continue;
        }
        CountryProfile profile;
        if (p.contains("country") && p["country"].is_string()) {
          if (auto c = CountryCode::parse(p["country"].get<std::string>())) {
            profile.country = *c;
          } else {
            bad(at + ".country: \"" + p["country"].get<std::string>() +
                "\" is not a 3-letter uppercase code");
          }
        } else {
          bad(at + ".country: missing or not a string");
        }
        auto field = [&](const char* key, auto& slot, auto predicate,
                         const char* what) {
          if (p.contains(key) && predicate(p[key])) {
            slot = p[key].get<std::decay_t<decltype(slot)>>();
          } else {
            bad(at + "." + key + ": missing or not " + what);
          }
        };
        field("papers_per_year", profile.papers_per_year,
              [](const nlohmann::json& x) { return x.is_number_integer(); },
              "an integer");
        field("ic_propensity", profile.ic_propensity,
              [](const nlohmann::json& x) { return x.is_number(); }, "a number");
        field("nc_propensity", profile.nc_propensity,
              [](const nlohmann::json& x) { return x.is_number(); }, "a number");
        field("ca_share_ic", profile.ca_share_ic,
              [](const nlohmann::json& x) { return x.is_number(); }, "a number");
        field("partner_pool_quality", profile.partner_pool_quality,
              [](const nlohmann::json& x) { return x.is_number(); }, "a number");
        if (p.contains("phase") && p["phase"].is_string()) {
          if (auto label = parse_phase_label(p["phase"].get<std::string>())) {
            profile.phase_label = *label;
          } else {
            bad(at + ".phase: unknown label \"" + p["phase"].get<std::string>() +
                "\"");
          }
        } else {
          bad(at + ".phase: missing or not a string");
        }
        cfg.profiles.push_back(profile);
      }
    }
  }

  if (!problems.empty()) throw InvalidConfigError(std::move(problems));

  if (auto semantic = validate_config(cfg); !semantic.empty()) {
    throw InvalidConfigError(std::move(semantic));
  }
  return cfg;
}

inline GeneratorConfig read_generator_config(const std::string& path) {
  return parse_generator_config(read_file(path), path);
}

}  // namespace scimeter
