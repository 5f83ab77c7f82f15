// Command-line front end: validate, indicators, correlate, synth, report.
//
// Exit codes: 0 success, 1 validation/data failure, 2 usage error,
// 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "scimeter/scimeter.hpp"

namespace fs = std::filesystem;
using namespace scimeter;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string input;
  std::string output_dir = ".";
  std::optional<std::int64_t> top;
  std::optional<double> min_output;
  std::string baselines_path;
  unsigned threads = 1;
};

Selection make_selection(const CommonOptions& opts) {
  if (opts.top) return Selection::top(static_cast<std::size_t>(*opts.top));
  if (opts.min_output) return Selection::min(*opts.min_output);
  return Selection::all();
}

void add_selection_flags(CLI::App* cmd, CommonOptions& opts) {
  auto* top = cmd->add_option("--top", opts.top,
                              "keep the N countries with the largest "
                              "whole-counted output")
                  ->check(CLI::NonNegativeNumber);
  auto* min = cmd->add_option("--min-output", opts.min_output,
                              "keep countries with whole-counted output >= M");
  top->excludes(min);
  min->excludes(top);
}

void add_baselines_flags(CLI::App* cmd, CommonOptions& opts, bool& self) {
  auto* file = cmd->add_option(
      "--baselines", opts.baselines_path,
      "normalize against a previously written baselines table");
  cmd->add_flag("--self", self,
                "normalize against the input corpus itself (default)")
      ->excludes(file);
}

int report_ingest_failure(const IngestResult& ingest) {
  for (const auto& d : ingest.diagnostics) {
    std::cerr << "line " << d.line << ": " << d.message << '\n';
  }
  std::cerr << "input rejected: " << ingest.diagnostics.size()
            << " problem(s)\n";
  return kExitValidation;
}

IngestResult load_input(const CommonOptions& opts) {
  return ingest_corpus_file(opts.input, opts.threads);
}

Baselines make_baselines(const CommonOptions& opts, const Corpus& corpus) {
  if (!opts.baselines_path.empty()) return read_baselines(opts.baselines_path);
  return build_baselines(corpus);
}

void write_output(const CommonOptions& opts, const std::string& name,
                  std::string_view content) {
  fs::create_directories(opts.output_dir);
  write_file((fs::path(opts.output_dir) / name).string(), content);
}

Metadata base_metadata(const char* command, const CommonOptions& opts,
                       const IngestResult& ingest) {
  Metadata meta;
  meta.set("command", command);
  meta.set("input", opts.input);
  meta.set("input_hash_fnv1a64", hex64(fnv1a64(read_file(opts.input))));
  meta.set("records", ingest.valid_records);
  if (opts.top) {
    meta.set("selection", "top " + std::to_string(*opts.top));
  } else if (opts.min_output) {
    meta.set("selection", "min-output " + format_double(*opts.min_output));
  } else {
    meta.set("selection", "all");
  }
  meta.set("baselines", opts.baselines_path.empty()
                            ? std::string("self")
                            : "file " + opts.baselines_path);
  meta.set("threads", static_cast<std::int64_t>(opts.threads));
  meta.set("percentile_rule", kPercentileRule);
  meta.set("p_value_method", kPvalueMethod);
  return meta;
}

int run_validate(const CommonOptions& opts) {
  const auto ingest = load_input(opts);
  for (const auto& d : ingest.diagnostics) {
    std::cout << "line " << d.line << ": " << d.message << '\n';
  }
  std::set<std::int64_t> bad_lines;
  for (const auto& d : ingest.diagnostics) bad_lines.insert(d.line);
  const auto invalid = static_cast<std::int64_t>(bad_lines.size());
  std::cout << ingest.valid_records << " valid, " << invalid << " invalid\n";
  if (ingest.data_lines == 0) {
    std::cout << "warning: no records in input\n";
  }
  return ingest.diagnostics.empty() ? kExitOk : kExitValidation;
}

int run_indicators(const CommonOptions& opts) {
  const auto ingest = load_input(opts);
  if (!ingest.ok()) return report_ingest_failure(ingest);

  const auto baselines = make_baselines(opts, ingest.corpus);
  const auto computed = compute_indicators(ingest.corpus, baselines);
  const auto rows =
      indicator_table(ingest.corpus, baselines, make_selection(opts));
  const auto table = indicator_table_to_text(rows);

  auto meta = base_metadata("indicators", opts, ingest);
  meta.set("countries_selected", static_cast<std::int64_t>(rows.size()));
  meta.set("ca_unknown_records", computed.ca_unknown_records);
  meta.set("excluded_items", computed.excluded_items);
  const auto gap = ca_gap(rows);
  meta.set("ca_gap_mean_of_ratios", format_optional(gap.mean_of_ratios));
  meta.set("ca_gap_ratio_of_means", format_optional(gap.ratio_of_means));

  write_output(opts, "indicators.tsv", table);
  write_output(opts, "output_distribution.tsv",
               output_distribution_to_text(rows));
  // Reusable for split-corpus runs via --baselines.
  write_output(opts, "baselines.tsv", baselines_to_table(baselines));
  write_output(opts, "metadata.txt", meta.to_text());
  std::cout << table;
  return kExitOk;
}

int run_correlate(const CommonOptions& opts, const std::string& pair) {
  const auto colon = pair.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size()) {
    std::cerr << "--pair expects x_field:y_field (e.g. pct_ic:pct_ca)\n";
    return kExitUsage;
  }
  const std::string x_field = pair.substr(0, colon);
  const std::string y_field = pair.substr(colon + 1);
  {
    // Field names are a usage concern; check before touching data.
    CountryIndicators probe;
    try {
      indicator_field(probe, x_field);
      indicator_field(probe, y_field);
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kExitUsage;
    }
  }

  const auto ingest = load_input(opts);
  if (!ingest.ok()) return report_ingest_failure(ingest);
  const auto baselines = make_baselines(opts, ingest.corpus);
  const auto rows =
      indicator_table(ingest.corpus, baselines, make_selection(opts));

  const auto report = correlate_fields(rows, x_field, y_field);
  const auto text = correlation_to_text(report);

  auto meta = base_metadata("correlate", opts, ingest);
  meta.set("pair", x_field + ":" + y_field);
  meta.set("points_used", report.n);
  meta.set("points_dropped_undefined", report.dropped);

  write_output(opts, "correlation.tsv", text);
  write_output(opts, "scatter_" + x_field + "_" + y_field + ".tsv",
               scatter_to_text(rows, x_field, y_field));
  write_output(opts, "metadata.txt", meta.to_text());
  std::cout << text;
  if (!report.r) {
    std::cout << "note: correlation undefined (zero variance)\n";
  }
  return kExitOk;
}

int run_synth(const std::string& config_path, const std::string& output_path,
              std::optional<std::uint64_t> seed_override) {
  auto cfg = read_generator_config(config_path);
  if (seed_override) cfg.seed = *seed_override;
  const auto corpus = generate(cfg);
  const auto parent = fs::path(output_path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_corpus(output_path, corpus);

  Metadata meta;
  meta.set("command", "synth");
  meta.set("config", config_path);
  meta.set("config_hash_fnv1a64", hex64(fnv1a64(read_file(config_path))));
  meta.set("seed", std::to_string(cfg.seed));
  meta.set("records", static_cast<std::int64_t>(corpus.records.size()));
  write_file(output_path + ".meta.txt", meta.to_text());

  std::cout << "wrote " << corpus.records.size() << " records to "
            << output_path << "\n";
  return kExitOk;
}

int run_report(const CommonOptions& opts, const std::string& figure,
               bool exclusive) {
  figure_data({}, figure, exclusive);  // reject unknown specs before any I/O
  const auto ingest = load_input(opts);
  if (!ingest.ok()) return report_ingest_failure(ingest);
  const auto baselines = make_baselines(opts, ingest.corpus);
  const auto rows =
      indicator_table(ingest.corpus, baselines, make_selection(opts));

  const auto data = figure_data(rows, figure, exclusive);

  auto meta = base_metadata("report", opts, ingest);
  meta.set("figure", figure);
  meta.set("share_variant", exclusive ? "exclusive" : "overlapping");

  write_output(opts, figure + ".tsv", data);
  write_output(opts, "metadata.txt", meta.to_text());

  // A lone header means every selected row lacked the needed values.
  if (data.find('\n') == data.size() - 1) {
    std::cout << "warning: no defined data points for " << figure << "\n";
  }
  std::cout << "wrote " << figure << ".tsv (" << rows.size()
            << " countries selected)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"country-level bibliometric indicators"};
  app.require_subcommand(1);

  CommonOptions opts;
  bool self_baselines = false;
  std::string pair = "pct_ic:pct_ca";
  std::string figure;
  std::string config_path;
  std::string synth_output;
  std::optional<std::uint64_t> seed_override;
  bool exclusive = true;
  bool overlapping = false;

  auto* validate_cmd =
      app.add_subcommand("validate", "check a record file line by line");
  validate_cmd->add_option("--input", opts.input, "record file")->required();
  validate_cmd->add_option("--threads", opts.threads, "ingestion chunks");

  auto* indicators_cmd = app.add_subcommand(
      "indicators", "per-country indicator table from a record file");
  indicators_cmd->add_option("--input", opts.input, "record file")->required();
  indicators_cmd->add_option("--output-dir", opts.output_dir,
                             "where report files go");
  indicators_cmd->add_option("--threads", opts.threads, "ingestion chunks");
  add_selection_flags(indicators_cmd, opts);
  add_baselines_flags(indicators_cmd, opts, self_baselines);

  auto* correlate_cmd = app.add_subcommand(
      "correlate", "correlate two indicator columns across countries");
  correlate_cmd->add_option("--input", opts.input, "record file")->required();
  correlate_cmd->add_option("--output-dir", opts.output_dir,
                            "where report files go");
  correlate_cmd->add_option("--threads", opts.threads, "ingestion chunks");
  correlate_cmd->add_option("--pair", pair,
                            "x_field:y_field (default pct_ic:pct_ca)");
  add_selection_flags(correlate_cmd, opts);
  add_baselines_flags(correlate_cmd, opts, self_baselines);

  auto* synth_cmd = app.add_subcommand(
      "synth", "generate a synthetic corpus from a config file");
  synth_cmd->add_option("--config", config_path, "generator config (JSON)")
      ->required();
  synth_cmd->add_option("--output", synth_output, "record file to write")
      ->required();
  synth_cmd->add_option("--seed", seed_override,
                        "override the config's seed");

  auto* report_cmd = app.add_subcommand(
      "report", "figure-style data files (fig1, fig3..fig8)");
  report_cmd->add_option("--input", opts.input, "record file")->required();
  report_cmd->add_option("--output-dir", opts.output_dir,
                         "where report files go");
  report_cmd->add_option("--threads", opts.threads, "ingestion chunks");
  report_cmd->add_option("--figure", figure, "figure spec")->required();
  auto* excl = report_cmd->add_flag("--exclusive", exclusive,
                                    "exclusive collaboration shares (default)");
  report_cmd->add_flag("--overlapping", overlapping,
                       "overlapping collaboration shares")
      ->excludes(excl);
  add_selection_flags(report_cmd, opts);
  add_baselines_flags(report_cmd, opts, self_baselines);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(opts);
    if (indicators_cmd->parsed()) return run_indicators(opts);
    if (correlate_cmd->parsed()) return run_correlate(opts, pair);
    if (synth_cmd->parsed()) {
      return run_synth(config_path, synth_output, seed_override);
    }
    if (report_cmd->parsed()) {
      return run_report(opts, figure, overlapping ? false : true);
    }
  } catch (const UnknownFigureSpecError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}
