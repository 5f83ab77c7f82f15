#pragma once

// Line-delimited record files, baselines tables, and ingestion.
//
// A record file holds one JSON object per line:
//   {"doc_id":"p1","year":2010,"doc_type":"article","disciplines":[5],
//    "affiliations":[{"institution":"inst-a","country":"NLD"}],
//    "corresponding":0,"citations":3}
// "corresponding" is optional; blank lines are ignored. Ingestion reports
// line-numbered diagnostics for every parse or validation problem, and
// sorts accepted records by doc_id so downstream tables never depend on
// input line order or chunking.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "scimeter/corpus.hpp"
#include "scimeter/normalization.hpp"

namespace scimeter {

class IoError : public Error {
  using Error::Error;
};

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return std::move(ss).str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + path);
}

// ---------------------------------------------------------------------------
// Record lines

inline nlohmann::ordered_json record_to_json(const PublicationRecord& r) {
  nlohmann::ordered_json j;
  j["doc_id"] = r.doc_id;
  j["year"] = r.year;
  j["doc_type"] = doc_type_name(r.doc_type);
  j["disciplines"] = r.disciplines;
  auto affs = nlohmann::ordered_json::array();
  for (const auto& a : r.affiliations) {
    affs.push_back({{"institution", a.institution_id},
                    {"country", a.country.str()}});
  }
  j["affiliations"] = std::move(affs);
  if (r.corresponding_index) {
    j["corresponding"] = *r.corresponding_index;
  }
  j["citations"] = r.citations;
  return j;
}

inline std::string corpus_to_lines(const Corpus& corpus) {
  std::string out;
  for (const auto& r : corpus.records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline void write_corpus(const std::string& path, const Corpus& corpus) {
  write_file(path, corpus_to_lines(corpus));
}

struct LineDiagnostic {
  std::int64_t line = 0;
  std::string message;
};

namespace detail {

// Parses one line into a RawRecord; structural problems (bad JSON, missing
// or mistyped fields) are reported as messages in `error`.
inline bool parse_record_line(std::string_view text, RawRecord& raw,
                              std::string& error) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    error = "not valid JSON";
    return false;
  }
  if (!j.is_object()) {
    error = "expected a JSON object";
    return false;
  }
  auto require = [&](const char* key, bool ok) {
    if (!ok && error.empty()) {
      error = std::string("field \"") + key + "\" missing or mistyped";
    }
    return ok;
  };
  if (!require("doc_id", j.contains("doc_id") && j["doc_id"].is_string()) ||
      !require("year", j.contains("year") && j["year"].is_number_integer()) ||
      !require("doc_type",
               j.contains("doc_type") && j["doc_type"].is_string()) ||
      !require("disciplines",
               j.contains("disciplines") && j["disciplines"].is_array()) ||
      !require("affiliations",
               j.contains("affiliations") && j["affiliations"].is_array()) ||
      !require("citations", j.contains("citations") &&
                                j["citations"].is_number_integer())) {
    return false;
  }
  raw.doc_id = j["doc_id"].get<std::string>();
  raw.year = j["year"].get<std::int64_t>();
  raw.doc_type = j["doc_type"].get<std::string>();
  raw.disciplines.clear();
  for (const auto& d : j["disciplines"]) {
    if (!d.is_number_integer()) {
      error = "disciplines: expected integers";
      return false;
    }
    raw.disciplines.push_back(d.get<std::int64_t>());
  }
  raw.affiliations.clear();
  for (const auto& a : j["affiliations"]) {
    if (!a.is_object() || !a.contains("institution") ||
        !a["institution"].is_string() || !a.contains("country") ||
        !a["country"].is_string()) {
      error = "affiliations: expected objects with institution and country";
      return false;
    }
    raw.affiliations.push_back({a["institution"].get<std::string>(),
                                a["country"].get<std::string>()});
  }
  raw.corresponding_index.reset();
  if (j.contains("corresponding")) {
    if (!j["corresponding"].is_number_integer()) {
      error = "corresponding: expected an integer index";
      return false;
    }
    raw.corresponding_index = j["corresponding"].get<std::int64_t>();
  }
  raw.citations = j["citations"].get<std::int64_t>();
  return true;
}

struct ParsedLine {
  std::int64_t line;
  PublicationRecord record;
};

struct ChunkResult {
  std::vector<ParsedLine> records;
  std::vector<LineDiagnostic> diagnostics;
  std::int64_t lines_seen = 0;
};

inline ChunkResult ingest_lines(
    const std::vector<std::pair<std::int64_t, std::string_view>>& lines) {
  ChunkResult out;
  for (const auto& [line_no, text] : lines) {
    out.lines_seen += 1;
    RawRecord raw;
    std::string error;
    if (!parse_record_line(text, raw, error)) {
      out.diagnostics.push_back({line_no, "parse error: " + error});
      continue;
    }
    auto validated = validate_record(raw);
    if (!validated.ok()) {
      for (const auto& issue : validated.issues) {
        out.diagnostics.push_back(
            {line_no, std::string(validation_code_name(issue.code)) + ": " +
                          issue.detail});
      }
      continue;
    }
    out.records.push_back({line_no, std::move(*validated.record)});
  }
  return out;
}

}  // namespace detail

struct IngestResult {
  Corpus corpus;  // canonical doc_id order
  std::vector<LineDiagnostic> diagnostics;
  std::int64_t data_lines = 0;
  std::int64_t valid_records = 0;
  bool ok() const { return diagnostics.empty(); }
};

/// Parses and validates a record file. `threads` splits the line list into
/// that many chunks parsed concurrently; results are independent of the
/// chunking because records are merged in line order and then sorted by
/// doc_id.
inline IngestResult ingest_corpus_text(std::string_view text,
                                       const std::string& source_note,
                                       unsigned threads = 1) {
  std::vector<std::pair<std::int64_t, std::string_view>> lines;
  std::int64_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    line_no += 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      lines.push_back({line_no, line});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  threads = std::max(1u, threads);
  const std::size_t chunk_count =
      std::min<std::size_t>(threads, std::max<std::size_t>(1, lines.size()));
  std::vector<detail::ChunkResult> chunks(chunk_count);
  {
    std::vector<std::thread> workers;
    const std::size_t per = (lines.size() + chunk_count - 1) / chunk_count;
    for (std::size_t c = 0; c < chunk_count; ++c) {
      const std::size_t lo = c * per;
      const std::size_t hi = std::min(lines.size(), lo + per);
      workers.emplace_back([&, c, lo, hi] {
        std::vector<std::pair<std::int64_t, std::string_view>> part(
            lines.begin() + static_cast<std::ptrdiff_t>(lo),
            lines.begin() + static_cast<std::ptrdiff_t>(hi));
        chunks[c] = detail::ingest_lines(part);
      });
    }
    for (auto& w : workers) w.join();
  }

  IngestResult result;
  result.corpus.census_note = source_note;
  std::vector<detail::ParsedLine> parsed;
  for (auto& chunk : chunks) {
    result.data_lines += chunk.lines_seen;
    for (auto& d : chunk.diagnostics) result.diagnostics.push_back(std::move(d));
    for (auto& p : chunk.records) parsed.push_back(std::move(p));
  }

  // Duplicate doc_ids violate the corpus invariant.
  {
    std::map<std::string_view, std::int64_t> first_line;
    for (const auto& p : parsed) {
      auto [it, inserted] = first_line.try_emplace(p.record.doc_id, p.line);
      if (!inserted) {
        result.diagnostics.push_back(
            {p.line, "duplicate doc_id \"" + p.record.doc_id +
                         "\" (first seen at line " + std::to_string(it->second) +
                         ")"});
      }
    }
  }

  std::sort(result.diagnostics.begin(), result.diagnostics.end(),
            [](const LineDiagnostic& a, const LineDiagnostic& b) {
              return a.line < b.line;
            });
  result.valid_records = static_cast<std::int64_t>(parsed.size());
  result.corpus.records.reserve(parsed.size());
  for (auto& p : parsed) result.corpus.records.push_back(std::move(p.record));
  canonicalize(result.corpus);
  return result;
}

inline IngestResult ingest_corpus_file(const std::string& path,
                                       unsigned threads = 1) {
  return ingest_corpus_text(read_file(path), "ingested from " + path, threads);
}

// ---------------------------------------------------------------------------
// Baselines tables (tab-separated, one stratum per row)

inline std::string baselines_to_table(const Baselines& baselines) {
  std::string out = "discipline\tyear\tdoc_type\trecords\titem_mass\tmean_citations\n";
  for (const auto& [key, s] : baselines.strata()) {
    out += std::to_string(key.discipline);
    out += '\t';
    out += std::to_string(key.year);
    out += '\t';
    out += doc_type_name(key.doc_type);
    out += '\t';
    out += std::to_string(s.record_count);
    out += '\t';
    out += format_double(s.item_mass);
    out += '\t';
    out += format_double(s.mean_citations);
    out += '\n';
  }
  return out;
}

inline void write_baselines(const std::string& path, const Baselines& b) {
  write_file(path, baselines_to_table(b));
}

inline Baselines parse_baselines_table(std::string_view text,
                                       const std::string& origin) {
  Baselines::Map strata;
  std::int64_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    line_no += 1;
    if (line_no == 1 || line.empty()) continue;  // header

    std::vector<std::string> fields;
    std::size_t f = 0;
    while (true) {
      const auto tab = line.find('\t', f);
      fields.emplace_back(line.substr(f, tab == std::string_view::npos
                                             ? std::string_view::npos
                                             : tab - f));
      if (tab == std::string_view::npos) break;
      f = tab + 1;
    }
    if (fields.size() != 6) {
      throw IoError(origin + ": line " + std::to_string(line_no) +
                    ": expected 6 tab-separated fields");
    }
    StratumKey key;
    StratumStats stats;
    try {
      key.discipline = std::stoi(fields[0]);
      key.year = std::stoi(fields[1]);
      stats.record_count = std::stoll(fields[3]);
      stats.item_mass = std::stod(fields[4]);
      stats.mean_citations = std::stod(fields[5]);
    } catch (const std::exception&) {
      throw IoError(origin + ": line " + std::to_string(line_no) +
                    ": malformed numeric field");
    }
    const auto type = parse_doc_type(fields[2]);
    if (!type) {
      throw IoError(origin + ": line " + std::to_string(line_no) +
                    ": unknown doc_type \"" + fields[2] + "\"");
    }
    key.doc_type = *type;
    if (stats.mean_citations < 0) {
      throw IoError(origin + ": line " + std::to_string(line_no) +
                    ": negative mean_citations");
    }
    strata[key] = stats;
  }
  return Baselines(std::move(strata));
}

inline Baselines read_baselines(const std::string& path) {
  return parse_baselines_table(read_file(path), path);
}

}  // namespace scimeter
