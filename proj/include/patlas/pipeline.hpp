#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "patlas/citystats.hpp"
#include "patlas/concentration.hpp"
#include "patlas/control.hpp"
#include "patlas/records.hpp"

namespace patlas {

struct GroupSpec {
  std::string id;
  GroupSelector selector;
};

struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path gazetteer;
  std::filesystem::path output_dir;
  std::vector<GroupSpec> groups;
  double top_cited_fraction = 0.10;
  long min_patents = 2;
  CountingMode counting = CountingMode::Whole;
  InventorUnit inventor_unit = InventorUnit::Listing;
  std::size_t hub_top_k = 10;
  std::vector<YearWindow> windows;        // map periods
  std::vector<YearWindow> table_windows;  // per-year averages table
  std::set<std::string> countries;  // inventor countries of the query
  std::optional<Date> date_from;
  std::optional<Date> date_to;
  std::vector<std::string> warnings;  // collected by validate()
};

// Built-in groups (CEE, DE-East, DE-West), map periods 1981-1985 ...
// 2006-2010 and table windows 1981-1985 ... 2001-2005, 2006-2007.
RunConfig default_config();
std::vector<GroupSpec> default_groups();
std::vector<YearWindow> default_windows();
std::vector<YearWindow> default_table_windows();

// Flat `key = value` text with `#` comments and optional `[section]`
// headers; a key inside `[group]` is read as `group.<key>`. Relative paths
// resolve against `base_dir`. Groups given in the file replace the built-in
// ones. Throws ConfigError.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// Checks ranges and collects warnings (overlapping windows). Throws
// ConfigError.
void validate(RunConfig& config);

// The query described by the config. Countries default to every country of
// the CEE-style groups when none are set; open date bounds span all dates.
Query query_from(const RunConfig& config);

struct RejectEntry {
  std::string kind;  // "reject" or "warning"
  std::string source;
  std::size_t line = 0;
  std::string id;
  std::string reason;
};

struct IngestResult {
  std::vector<PatentRecord> records;
  std::vector<RejectEntry> report;
  std::size_t rejected() const;
};

// Reads corpus files (.jsonl), saved full-text pages (.html/.htm, with an
// optional `<page>.cited` sidecar holding the cited-by count) and
// directories of pages. Bad lines and pages are rejected with a reason; the
// first occurrence of an id wins. Throws Error on an unreadable input.
IngestResult ingest(std::span<const std::filesystem::path> inputs);

// CSV `kind,source,line,id,reason`.
std::string ingest_report_csv(const IngestResult& result);

// Writes the corpus and report atomically. On failure nothing is left at
// either path.
IngestResult cmd_ingest(std::span<const std::filesystem::path> inputs, const std::filesystem::path& corpus_out,
                        const std::filesystem::path& report_out);

struct RunResult {
  std::vector<std::string> artifacts;  // file names relative to the output dir, sorted
  std::vector<std::string> warnings;
  std::size_t records_total = 0;
  std::size_t records_used = 0;
  std::size_t records_filtered_out = 0;
  std::size_t records_rejected = 0;
};

// Full output tree for one query. See README for the file list.
RunResult cmd_run(const RunConfig& config);

// One overlay pair per window, named `<window>_citation.kml` etc.
RunResult cmd_periods(const RunConfig& config);

// Plain-text rendering of the table CSVs found in `dir`; also written to
// `dir/report.txt`.
std::string cmd_report(const std::filesystem::path& dir);

// Lowercase SHA-256 hex of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace patlas
