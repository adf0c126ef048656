#include "patlas/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <map>
#include <tuple>
#include <unordered_set>

#include "patlas/csv.hpp"
#include "patlas/error.hpp"
#include "patlas/gazetteer.hpp"
#include "patlas/overlay.hpp"
#include "patlas/text.hpp"
#include "patlas/uspto.hpp"

namespace fs = std::filesystem;

namespace patlas {
namespace {

constexpr double kUnmatchedWarnRate = 0.20;

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(sep, pos);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(pos, end - pos));
    if (!item.empty()) out.push_back(std::move(item));
    pos = end + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T v{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw ConfigError("bad value for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return v;
}

Date parse_date_value(std::string_view key, std::string_view value) {
  auto d = Date::parse_iso(value);
  if (!d) throw ConfigError("bad date for " + std::string(key) + ": '" + std::string(value) + "'");
  return *d;
}

fs::path resolve(const fs::path& base, std::string_view value) {
  fs::path p{std::string(value)};
  return p.is_relative() && !base.empty() ? base / p : p;
}

bool is_page(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".html" || ext == ".htm";
}

std::optional<long> read_sidecar(const fs::path& page) {
  auto side = page;
  side.replace_extension(".cited");
  if (!fs::exists(side)) return std::nullopt;
  const auto text = trim(csv::read_file(side));
  long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || v < 0) {
    throw ParseError(1, "bad cited-by count in " + side.filename().string());
  }
  return v;
}

struct Ingestor {
  IngestResult result;
  std::unordered_set<std::string> seen;

  void accept(PatentRecord r, const std::string& source, std::size_t line) {
    if (!seen.insert(r.id).second) {
      result.report.push_back({"reject", source, line, r.id, "duplicate patent id"});
      return;
    }
    result.records.push_back(std::move(r));
  }

  void corpus_file(const fs::path& path) {
    const auto text = csv::read_file(path);
    const auto source = path.filename().string();
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      std::string_view line(text.data() + pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (trim(line).empty()) continue;
      try {
        accept(parse_record_line(line, line_no), source, line_no);
      } catch (const ParseError& e) {
        result.report.push_back({"reject", source, line_no, "", e.reason()});
      }
    }
  }

  void page(const fs::path& path) {
    const auto text = csv::read_file(path);
    const auto source = path.filename().string();
    try {
      accept(parse_uspto_fulltext(text, read_sidecar(path)), source, 0);
    } catch (const ParseError& e) {
      result.report.push_back({"reject", source, 0, "", e.reason()});
    } catch (const Error& e) {
      result.report.push_back({"reject", source, 0, "", e.what()});
    }
  }

  void input(const fs::path& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<fs::path> pages;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && is_page(entry.path())) pages.push_back(entry.path());
      }
      std::sort(pages.begin(), pages.end());
      for (const auto& p : pages) page(p);
    } else if (!fs::is_regular_file(path, ec)) {
      throw Error("cannot read " + path.string());
    } else if (is_page(path)) {
      page(path);
    } else {
      corpus_file(path);
    }
  }
};

// In-memory output tree; flushed file by file with atomic renames.
struct OutputTree {
  std::map<std::string, std::string> files;

  void add(std::string name, std::string content) { files[std::move(name)] = std::move(content); }

  std::vector<std::string> write(const fs::path& dir) {
    fs::create_directories(dir);
    std::string manifest;
    std::vector<std::string> names;
    for (const auto& [name, content] : files) {
      csv::write_file_atomic(dir / name, content);
      manifest += sha256_hex(content) + "  " + name + "\n";
      names.push_back(name);
    }
    csv::write_file_atomic(dir / "manifest.txt", manifest);
    names.push_back("manifest.txt");
    std::sort(names.begin(), names.end());
    return names;
  }
};

struct MapProducts {
  GeocodedCorpus geocoded;
  std::vector<CityAggregate> cities;  // tested and ranked
  OverlayDocument citation;
  OverlayDocument portfolio;
};

MapProducts map_pipeline(std::span<const PatentRecord> records, const Gazetteer& gazetteer, const RunConfig& cfg,
                         const std::string& title_suffix) {
  MapProducts m;
  m.geocoded = geocode_corpus(records, gazetteer);
  const auto mask = top_cited_mask(records, cfg.top_cited_fraction);
  m.cities = aggregate_by_city(records, m.geocoded, mask);
  const long top = static_cast<long>(std::count(mask.begin(), mask.end(), char{1}));
  apply_citation_tests(m.cities, top, static_cast<long>(records.size()));
  apply_rank_classes(m.cities, cfg.min_patents);
  m.citation = build_citation_overlay(m.cities, cfg.min_patents, "Citation performance" + title_suffix);
  m.portfolio = build_portfolio_overlay(m.cities, cfg.min_patents, "Patent portfolio" + title_suffix);
  return m;
}

void add_overlays(OutputTree& out, const std::string& prefix, const MapProducts& m) {
  out.add(prefix + "citation.kml", emit_kml(m.citation));
  out.add(prefix + "citation.geojson", emit_geojson(m.citation));
  out.add(prefix + "portfolio.kml", emit_kml(m.portfolio));
  out.add(prefix + "portfolio.geojson", emit_geojson(m.portfolio));
}

void warn_unmatched(const GeocodedCorpus& g, std::vector<std::string>& warnings) {
  const auto total = g.matched_listings() + g.unmatched_listings();
  if (total > 0 && g.unmatched_rate() > kUnmatchedWarnRate) {
    warnings.push_back("unmatched geocode rate " + csv::fixed(100.0 * g.unmatched_rate(), 1) +
                       "% exceeds 20%");
  }
}

std::string fit_row(const std::string& group, const LineFit& f) {
  return csv::join_row({group, csv::fixed(f.slope, 6), csv::fixed(f.intercept, 6), csv::fixed(f.r2, 6),
                        std::to_string(f.n)});
}

std::string key_text(const CityKey& k) {
  std::string s = k.country + ":" + k.name;
  if (!k.admin1.empty()) s += ":" + k.admin1;
  return s;
}

void add_group_outputs(OutputTree& out, const RunConfig& cfg, std::span<const CityAggregate> cities,
                       const Gazetteer& gazetteer) {
  std::string slopes = "group,slope,intercept,r2,n\n";
  std::string islopes = "group,slope,intercept,r2,n\n";
  std::string hubs = "group,key,label,population,patents,PI\n";
  for (const auto& g : cfg.groups) {
    GroupProfile profile;
    try {
      profile = build_group(g.id, cities, gazetteer, g.selector);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    if (profile.total_patents() == 0) {
      out.add("rank_size_" + g.id + ".csv", rank_size_csv({}));
      out.add("intensity_" + g.id + ".csv", intensity_csv({}));
      continue;
    }
    const auto series = rank_size_series(profile);
    out.add("rank_size_" + g.id + ".csv", rank_size_csv(series));
    const auto points = patenting_intensity(profile);
    out.add("intensity_" + g.id + ".csv", intensity_csv(points));
    if (series.size() >= 2) {
      std::vector<XY> xy;
      for (const auto& p : series) xy.push_back({p.ln_rank, p.ln_patents});
      slopes += fit_row(g.id, loglog_slope(xy));
    }
    if (points.size() >= 2) {
      std::vector<XY> xy;
      for (const auto& p : points) xy.push_back({p.log_rank, p.log_pi});
      islopes += fit_row(g.id, loglog_slope(xy));
    }
    for (const auto& h : detect_hubs(profile, cfg.hub_top_k)) {
      hubs += csv::join_row({g.id, key_text(h.key), h.label, std::to_string(h.population), std::to_string(h.patents),
                             csv::fixed(h.pi, 6)});
    }
  }
  out.add("slopes.csv", slopes);
  out.add("intensity_slopes.csv", islopes);
  out.add("hubs.csv", hubs);
}

void add_control_outputs(OutputTree& out, const RunConfig& cfg, std::span<const PatentRecord> snapshot,
                         std::span<const PatentRecord> all, const Query& query) {
  std::vector<ControlSummary> control;
  std::vector<OwnershipSeries> ownership;
  std::vector<CountryWindows> window_rows;
  for (const auto& country : query.inventor_countries) {
    control.push_back(control_summary(snapshot, country, cfg.inventor_unit));
    ownership.push_back(ownership_series(all, country));
    window_rows.push_back({country, five_year_averages(country_year_counts(all, country, cfg.counting), cfg.table_windows)});
  }
  out.add("control.csv", control_csv(control));
  out.add("ownership.csv", ownership_csv(ownership));
  out.add("windows.csv", window_csv(window_rows));
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Column-aligned plain text table.
std::string render_table(const std::string& title, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out = title + "\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::string line;
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      const auto& cell = rows[k][i];
      const std::string pad(width[i] - cell.size(), ' ');
      if (i == 0) line += cell + pad;
      else line += "  " + pad + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (k == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
      out += std::string(total, '-') + "\n";
    }
  }
  return out + "\n";
}

std::optional<std::vector<std::vector<std::string>>> read_csv_if(const fs::path& p) {
  if (!fs::exists(p)) return std::nullopt;
  auto rows = csv::parse(csv::read_file(p));
  if (rows.empty()) return std::nullopt;
  return rows;
}

std::string render_control(const std::vector<std::vector<std::string>>& rows) {
  static const char* const labels[] = {"Patents: international cooperation", "Patents: exclusively domestic",
                                       "Inventors: foreign assignee", "Inventors: domestic assignee",
                                       "Inventors: unknown assignee"};
  std::vector<std::vector<std::string>> t(6);
  t[0].push_back("");
  for (int i = 0; i < 5; ++i) t[i + 1].push_back(labels[i]);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() < 6) continue;
    t[0].push_back(rows[r][0]);
    for (int i = 0; i < 5; ++i) t[i + 1].push_back(rows[r][i + 1]);
  }
  return render_table("Foreign control of inventors and patents", t);
}

std::string render_windows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::string> windows;
  std::map<std::string, std::map<std::string, std::string>> cells;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() < 3) continue;
    if (std::find(windows.begin(), windows.end(), rows[r][1]) == windows.end()) windows.push_back(rows[r][1]);
    cells[rows[r][0]][rows[r][1]] = rows[r][2];
  }
  std::vector<std::vector<std::string>> t;
  std::vector<std::string> head{""};
  head.insert(head.end(), windows.begin(), windows.end());
  t.push_back(std::move(head));
  for (const auto& [country, by_window] : cells) {
    std::vector<std::string> row{country};
    for (const auto& w : windows) {
      auto it = by_window.find(w);
      row.push_back(it == by_window.end() ? "" : it->second);
    }
    t.push_back(std::move(row));
  }
  return render_table("Average granted patents per year", t);
}

}  // namespace

std::vector<GroupSpec> default_groups() {
  return {
      {"CEE", GroupSelector::parse("CZ,HU,PL,SK")},
      {"DE-East", GroupSelector::parse("DE:BB|MV|SN|ST|TH|BE")},
      {"DE-West", GroupSelector::parse("DE:!BB|MV|SN|ST|TH|BE")},
  };
}

std::vector<YearWindow> default_windows() {
  std::vector<YearWindow> w;
  for (int y = 1981; y <= 2006; y += 5) w.push_back({y, y + 4});
  return w;
}

std::vector<YearWindow> default_table_windows() {
  auto w = default_windows();
  w.back().last = 2007;
  return w;
}

RunConfig default_config() {
  RunConfig c;
  c.groups = default_groups();
  c.windows = default_windows();
  c.table_windows = default_table_windows();
  c.output_dir = "out";
  return c;
}

RunConfig parse_config(std::string_view text, const fs::path& base_dir) {
  RunConfig c = default_config();
  std::vector<GroupSpec> groups;
  std::string section;
  for (const auto& raw : split_list(text, '\n')) {
    auto line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("bad section header '" + line + "'");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value: '" + line + "'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    if (key.rfind("group.", 0) == 0) {
      const auto id = key.substr(6);
      if (id.empty()) throw ConfigError("empty group name");
      auto it = std::find_if(groups.begin(), groups.end(), [&](const GroupSpec& g) { return g.id == id; });
      if (it != groups.end()) throw ConfigError("group " + id + " defined twice");
      groups.push_back({id, GroupSelector::parse(value)});
    } else if (key == "corpus") {
      c.corpus = resolve(base_dir, value);
    } else if (key == "gazetteer") {
      c.gazetteer = resolve(base_dir, value);
    } else if (key == "out") {
      c.output_dir = resolve(base_dir, value);
    } else if (key == "countries") {
      c.countries.clear();
      for (const auto& cc : split_list(value, ',')) c.countries.insert(to_upper_ascii(cc));
    } else if (key == "from") {
      c.date_from = parse_date_value(key, value);
    } else if (key == "to") {
      c.date_to = parse_date_value(key, value);
    } else if (key == "top_cited_fraction") {
      c.top_cited_fraction = parse_number<double>(key, value);
    } else if (key == "min_patents") {
      c.min_patents = parse_number<long>(key, value);
    } else if (key == "hub_top_k") {
      c.hub_top_k = parse_number<std::size_t>(key, value);
    } else if (key == "counting") {
      auto m = parse_counting_mode(value);
      if (!m) throw ConfigError("counting must be whole or fractional");
      c.counting = *m;
    } else if (key == "inventor_unit") {
      auto u = parse_inventor_unit(value);
      if (!u) throw ConfigError("inventor_unit must be listing or person");
      c.inventor_unit = *u;
    } else if (key == "windows") {
      c.windows.clear();
      for (const auto& w : split_list(value, ',')) c.windows.push_back(YearWindow::parse(w));
    } else if (key == "table_windows") {
      c.table_windows.clear();
      for (const auto& w : split_list(value, ',')) c.table_windows.push_back(YearWindow::parse(w));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (!groups.empty()) c.groups = std::move(groups);
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = csv::read_file(path);
  } catch (const Error&) {
    throw ConfigError("cannot read config " + path.string());
  }
  return parse_config(text, path.parent_path());
}

void validate(RunConfig& c) {
  if (!(c.top_cited_fraction > 0.0 && c.top_cited_fraction < 1.0)) {
    throw ConfigError("top-cited fraction must lie in (0, 1)");
  }
  if (c.min_patents < 1) throw ConfigError("min_patents must be at least 1");
  if (c.groups.empty()) throw ConfigError("no groups configured");
  if (c.date_from && c.date_to && *c.date_to < *c.date_from) throw ConfigError("date range is reversed");
  for (const auto& cc : c.countries) {
    if (cc.size() != 2 || !std::all_of(cc.begin(), cc.end(), [](char ch) { return ch >= 'A' && ch <= 'Z'; })) {
      throw ConfigError("bad country code '" + cc + "'");
    }
  }
  auto sorted = c.windows;
  std::sort(sorted.begin(), sorted.end(), [](const YearWindow& a, const YearWindow& b) {
    return std::tie(a.first, a.last) < std::tie(b.first, b.last);
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].first <= sorted[i - 1].last) {
      c.warnings.push_back("windows " + sorted[i - 1].label() + " and " + sorted[i].label() + " overlap");
    }
  }
}

Query query_from(const RunConfig& c) {
  Query q;
  q.inventor_countries = c.countries;
  if (q.inventor_countries.empty()) {
    for (const auto& g : c.groups) {
      for (const auto& clause : g.selector.clauses) q.inventor_countries.insert(clause.country);
    }
  }
  q.date_from = c.date_from.value_or(Date{1, 1, 1});
  q.date_to = c.date_to.value_or(Date{9999, 12, 31});
  return q;
}

std::size_t IngestResult::rejected() const {
  return static_cast<std::size_t>(
      std::count_if(report.begin(), report.end(), [](const RejectEntry& e) { return e.kind == "reject"; }));
}

IngestResult ingest(std::span<const fs::path> inputs) {
  Ingestor in;
  for (const auto& p : inputs) in.input(p);
  for (const auto& issue : unknown_country_codes(in.result.records)) {
    in.result.report.push_back({"warning", "", 0, issue.record_id, "unknown country code " + issue.code});
  }
  return std::move(in.result);
}

std::string ingest_report_csv(const IngestResult& result) {
  std::string out = "kind,source,line,id,reason\n";
  for (const auto& e : result.report) {
    out += csv::join_row({e.kind, e.source, e.line ? std::to_string(e.line) : "", e.id, e.reason});
  }
  return out;
}

IngestResult cmd_ingest(std::span<const fs::path> inputs, const fs::path& corpus_out, const fs::path& report_out) {
  auto remove_outputs = [&] {
    std::error_code ec;
    fs::remove(corpus_out, ec);
    fs::remove(report_out, ec);
  };
  try {
    auto result = ingest(inputs);
    if (corpus_out.has_parent_path()) fs::create_directories(corpus_out.parent_path());
    if (report_out.has_parent_path()) fs::create_directories(report_out.parent_path());
    csv::write_file_atomic(corpus_out, serialize_corpus(result.records));
    csv::write_file_atomic(report_out, ingest_report_csv(result));
    return result;
  } catch (...) {
    remove_outputs();
    throw;
  }
}

RunResult cmd_run(const RunConfig& config) {
  RunResult res;
  const auto query = query_from(config);
  const fs::path inputs[] = {config.corpus};
  auto loaded = ingest(inputs);
  const auto gazetteer = Gazetteer::load(config.gazetteer);

  const auto snapshot = filter_records(loaded.records, query);
  res.records_total = loaded.records.size() + loaded.rejected();
  res.records_rejected = loaded.rejected();
  res.records_used = snapshot.size();
  res.records_filtered_out = loaded.records.size() - snapshot.size();
  if (res.records_rejected > 0) {
    res.warnings.push_back(std::to_string(res.records_rejected) + " corpus lines rejected, see validation.csv");
  }

  // Time series ignore the date range of the query.
  Query countries_only = query;
  countries_only.date_from = Date{1, 1, 1};
  countries_only.date_to = Date{9999, 12, 31};
  const auto series_corpus = filter_records(loaded.records, countries_only);

  OutputTree out;
  const auto maps = map_pipeline(snapshot, gazetteer, config, "");
  warn_unmatched(maps.geocoded, res.warnings);
  out.add("cities.csv", city_table_csv(maps.cities));
  out.add("unmatched.csv", unmatched_report_csv(maps.geocoded));
  add_overlays(out, "", maps);
  add_group_outputs(out, config, maps.cities, gazetteer);
  add_control_outputs(out, config, snapshot, series_corpus, query);
  out.add("validation.csv", ingest_report_csv(loaded));

  std::string summary = "metric,value\n";
  summary += "records_total," + std::to_string(res.records_total) + "\n";
  summary += "records_used," + std::to_string(res.records_used) + "\n";
  summary += "records_filtered_out," + std::to_string(res.records_filtered_out) + "\n";
  summary += "records_rejected," + std::to_string(res.records_rejected) + "\n";
  summary += "inventor_listings_matched," + std::to_string(maps.geocoded.matched_listings()) + "\n";
  summary += "inventor_listings_unmatched," + std::to_string(maps.geocoded.unmatched_listings()) + "\n";
  summary += "citation_nodes," + std::to_string(maps.citation.nodes.size()) + "\n";
  summary += "portfolio_nodes," + std::to_string(maps.portfolio.nodes.size()) + "\n";
  out.add("summary.csv", summary);

  res.artifacts = out.write(config.output_dir);
  print_warnings(res.warnings);
  return res;
}

RunResult cmd_periods(const RunConfig& config) {
  RunResult res;
  if (config.windows.empty()) throw ConfigError("no windows configured");
  const auto query = query_from(config);
  const fs::path inputs[] = {config.corpus};
  auto loaded = ingest(inputs);
  const auto gazetteer = Gazetteer::load(config.gazetteer);
  Query countries_only = query;
  countries_only.date_from = Date{1, 1, 1};
  countries_only.date_to = Date{9999, 12, 31};
  const auto corpus = filter_records(loaded.records, countries_only);
  res.records_total = loaded.records.size() + loaded.rejected();
  res.records_rejected = loaded.rejected();

  OutputTree out;
  std::string table = "window,patents,cities,citation_nodes,portfolio_nodes\n";
  std::unordered_set<std::string> used;
  for (const auto& w : config.windows) {
    std::vector<PatentRecord> slice;
    for (const auto& r : corpus) {
      if (r.grant_date.year >= w.first && r.grant_date.year <= w.last) {
        slice.push_back(r);
        used.insert(r.id);
      }
    }
    const auto maps = map_pipeline(slice, gazetteer, config, " " + w.label());
    warn_unmatched(maps.geocoded, res.warnings);
    add_overlays(out, w.label() + "_", maps);
    table += csv::join_row({w.label(), std::to_string(slice.size()), std::to_string(maps.cities.size()),
                            std::to_string(maps.citation.nodes.size()), std::to_string(maps.portfolio.nodes.size())});
  }
  out.add("periods.csv", table);
  res.records_used = used.size();
  res.records_filtered_out = loaded.records.size() - used.size();
  res.artifacts = out.write(config.output_dir);
  print_warnings(res.warnings);
  return res;
}

std::string cmd_report(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("cannot read output directory " + dir.string());
  std::string text;
  if (auto rows = read_csv_if(dir / "offices.csv")) text += render_table("Patent applications by office", *rows);
  if (auto rows = read_csv_if(dir / "windows.csv")) text += render_windows(*rows);
  if (auto rows = read_csv_if(dir / "control.csv")) text += render_control(*rows);
  if (auto rows = read_csv_if(dir / "slopes.csv"); rows && rows->size() > 1) {
    text += render_table("Rank-size fits", *rows);
  }
  if (auto rows = read_csv_if(dir / "intensity_slopes.csv"); rows && rows->size() > 1) {
    text += render_table("Patenting intensity fits", *rows);
  }
  if (auto rows = read_csv_if(dir / "hubs.csv"); rows && rows->size() > 1) {
    text += render_table("Innovation hubs", *rows);
  }
  if (auto rows = read_csv_if(dir / "summary.csv")) text += render_table("Run summary", *rows);
  if (text.empty()) throw Error("no table CSVs in " + dir.string());
  csv::write_file_atomic(dir / "report.txt", text);
  return text;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace patlas
