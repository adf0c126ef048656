#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "patlas/error.hpp"
#include "patlas/pipeline.hpp"
#include "patlas/text.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config;
  std::string corpus;
  std::string gazetteer;
  std::string countries;
  std::string from;
  std::string to;
  std::string out;
  std::string windows;
  std::string counting;
  std::string inventor_unit;
  std::optional<double> top_fraction;
  std::optional<long> min_patents;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Config file (falls back to $PATLAS_CONFIG)");
  cmd->add_option("--corpus", f.corpus, "Corpus file (.jsonl)");
  cmd->add_option("--gazetteer", f.gazetteer, "Gazetteer CSV");
  cmd->add_option("--countries", f.countries, "Inventor countries, comma separated");
  cmd->add_option("--from", f.from, "First grant date, YYYY-MM-DD");
  cmd->add_option("--to", f.to, "Last grant date, YYYY-MM-DD");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--top-fraction", f.top_fraction, "Highly cited fraction of the corpus");
  cmd->add_option("--min-patents", f.min_patents, "Minimum patents for a city to be mapped");
  cmd->add_option("--counting", f.counting, "Per-year counting: whole or fractional");
  cmd->add_option("--inventor-unit", f.inventor_unit, "Control inventor rows: listing or person");
}

patlas::RunConfig build_config(const Flags& f) {
  patlas::RunConfig cfg = patlas::default_config();
  std::string path = f.config;
  if (path.empty()) {
    if (const char* env = std::getenv("PATLAS_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) cfg = patlas::load_config(path);

  std::string overrides;
  auto put = [&](const char* key, const std::string& value) {
    if (!value.empty()) overrides += std::string(key) + " = " + value + "\n";
  };
  put("countries", f.countries);
  put("from", f.from);
  put("to", f.to);
  put("counting", f.counting);
  put("inventor_unit", f.inventor_unit);
  put("windows", f.windows);
  if (!overrides.empty()) {
    const auto o = patlas::parse_config(overrides);
    if (!f.countries.empty()) cfg.countries = o.countries;
    if (!f.from.empty()) cfg.date_from = o.date_from;
    if (!f.to.empty()) cfg.date_to = o.date_to;
    if (!f.counting.empty()) cfg.counting = o.counting;
    if (!f.inventor_unit.empty()) cfg.inventor_unit = o.inventor_unit;
    if (!f.windows.empty()) cfg.windows = o.windows;
  }
  if (!f.corpus.empty()) cfg.corpus = f.corpus;
  if (!f.gazetteer.empty()) cfg.gazetteer = f.gazetteer;
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (f.top_fraction) cfg.top_cited_fraction = *f.top_fraction;
  if (f.min_patents) cfg.min_patents = *f.min_patents;

  if (cfg.corpus.empty()) throw patlas::ConfigError("no corpus given");
  if (cfg.gazetteer.empty()) throw patlas::ConfigError("no gazetteer given");
  patlas::validate(cfg);
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

void print_run(const patlas::RunResult& r, const fs::path& out) {
  std::cout << "records: " << r.records_total << " total, " << r.records_used << " used, "
            << r.records_filtered_out << " filtered out, " << r.records_rejected << " rejected\n";
  std::cout << r.artifacts.size() << " files written to " << out.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patlas: patent records to city statistics, concentration metrics and map overlays"};
  app.require_subcommand(1);

  std::vector<std::string> ingest_inputs;
  std::string ingest_out;
  std::string ingest_report;
  auto* ingest = app.add_subcommand("ingest", "Merge and validate corpus files and saved full-text pages");
  ingest->add_option("inputs", ingest_inputs, "Corpus files, pages or page directories")->required();
  ingest->add_option("--out", ingest_out, "Normalized corpus output file")->required();
  ingest->add_option("--report", ingest_report, "Validation report (default <out>.report.csv)");

  Flags run_flags;
  auto* run = app.add_subcommand("run", "Full output set for one query");
  add_run_flags(run, run_flags);

  Flags period_flags;
  auto* periods = app.add_subcommand("periods", "One overlay pair per year window");
  add_run_flags(periods, period_flags);
  periods->add_option("--windows", period_flags.windows, "Year windows, e.g. 1981-1985,1986-1990");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Render the table CSVs of an output directory as text");
  report->add_option("--out", report_dir, "Output directory of a previous run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*ingest) {
      std::vector<fs::path> inputs(ingest_inputs.begin(), ingest_inputs.end());
      const fs::path out = ingest_out;
      const fs::path rep = ingest_report.empty() ? fs::path(ingest_out + ".report.csv") : fs::path(ingest_report);
      const auto result = patlas::cmd_ingest(inputs, out, rep);
      std::cout << result.records.size() << " records written to " << out.string() << ", " << result.rejected()
                << " rejected\n";
    } else if (*run) {
      const auto cfg = build_config(run_flags);
      print_run(patlas::cmd_run(cfg), cfg.output_dir);
    } else if (*periods) {
      const auto cfg = build_config(period_flags);
      print_run(patlas::cmd_periods(cfg), cfg.output_dir);
    } else if (*report) {
      std::cout << patlas::cmd_report(report_dir);
    }
  } catch (const patlas::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
