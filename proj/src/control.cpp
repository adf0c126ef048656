#include "patlas/control.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

#include "patlas/csv.hpp"
#include "patlas/error.hpp"
#include "patlas/text.hpp"

namespace patlas {
namespace {

bool has_foreign_assignee(const PatentRecord& p, std::string_view country) {
  return std::any_of(p.assignees.begin(), p.assignees.end(),
                     [&](const Assignee& a) { return a.country && *a.country != country; });
}

void count_inventor(ControlSummary& s, InventorControl c) {
  switch (c) {
    case InventorControl::ForeignAssignee: ++s.inventors_foreign; break;
    case InventorControl::DomesticAssignee: ++s.inventors_domestic; break;
    case InventorControl::Unknown: ++s.inventors_unknown; break;
  }
}

void count_scope(ControlSummary& s, PatentScope scope) {
  if (scope == PatentScope::InternationalCooperation) ++s.patents_international;
  else if (scope == PatentScope::ExclusivelyDomestic) ++s.patents_domestic;
}

// Person mode: distinct (class, name) pairs; unnamed listings are unique.
void count_persons(std::span<const PatentRecord> corpus, std::string_view country, ControlSummary& s) {
  std::set<std::pair<InventorControl, std::string>> persons;
  for (const auto& p : corpus) {
    for (const auto& inv : p.inventors) {
      if (inv.country != country) continue;
      const auto c = classify_inventor_control(p, inv);
      const auto name = inv.name ? normalize_name(*inv.name) : std::string();
      if (name.empty() || persons.emplace(c, name).second) count_inventor(s, c);
    }
  }
}

int parse_year(std::string_view text, std::string_view whole) {
  int y = 0;
  const auto t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), y);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.size() != 4) {
    throw ConfigError("bad year window '" + std::string(whole) + "'");
  }
  return y;
}

}  // namespace

std::optional<InventorUnit> parse_inventor_unit(std::string_view text) {
  if (text == "listing") return InventorUnit::Listing;
  if (text == "person") return InventorUnit::Person;
  return std::nullopt;
}

PatentScope classify_patent_scope(const PatentRecord& p, std::string_view country) {
  bool inside = false;
  bool outside = false;
  for (const auto& a : p.inventors) {
    if (a.country == country) inside = true;
    else outside = true;
  }
  if (!inside) return PatentScope::NoInventorInCountry;
  return outside ? PatentScope::InternationalCooperation : PatentScope::ExclusivelyDomestic;
}

InventorControl classify_inventor_control(const PatentRecord& p, const PartyAddress& inventor) {
  bool known = false;
  for (const auto& a : p.assignees) {
    if (!a.country) continue;
    known = true;
    if (*a.country == inventor.country) return InventorControl::DomesticAssignee;
  }
  return known ? InventorControl::ForeignAssignee : InventorControl::Unknown;
}

ControlSummary& ControlSummary::operator+=(const ControlSummary& o) {
  patents_international += o.patents_international;
  patents_domestic += o.patents_domestic;
  inventors_foreign += o.inventors_foreign;
  inventors_domestic += o.inventors_domestic;
  inventors_unknown += o.inventors_unknown;
  return *this;
}

ControlSummary control_summary(std::span<const PatentRecord> corpus, std::string_view country,
                               InventorUnit unit) {
  long intl = 0;
  long dom = 0;
  long foreign = 0;
  long domestic = 0;
  long unknown = 0;
  const bool listings = unit == InventorUnit::Listing;
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
#pragma omp parallel for schedule(static) reduction(+ : intl, dom, foreign, domestic, unknown)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& p = corpus[i];
    const auto scope = classify_patent_scope(p, country);
    if (scope == PatentScope::NoInventorInCountry) continue;
    if (scope == PatentScope::InternationalCooperation) ++intl;
    else ++dom;
    if (!listings) continue;
    for (const auto& inv : p.inventors) {
      if (inv.country != country) continue;
      switch (classify_inventor_control(p, inv)) {
        case InventorControl::ForeignAssignee: ++foreign; break;
        case InventorControl::DomesticAssignee: ++domestic; break;
        case InventorControl::Unknown: ++unknown; break;
      }
    }
  }
  ControlSummary s{std::string(country), intl, dom, foreign, domestic, unknown};
  if (!listings) count_persons(corpus, country, s);
  return s;
}

double foreign_ownership_share(std::span<const PatentRecord> corpus, std::string_view country, int year) {
  long numerator = 0;
  long denominator = 0;
  for (const auto& p : corpus) {
    if (p.grant_date.year != year || !p.has_inventor_in(country)) continue;
    ++denominator;
    if (has_foreign_assignee(p, country)) ++numerator;
  }
  return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::map<int, double> moving_average_3(const std::map<int, double>& raw) {
  std::map<int, double> out;
  for (const auto& [year, value] : raw) {
    double sum = value;
    int count = 1;
    for (int y : {year - 1, year + 1}) {
      if (auto it = raw.find(y); it != raw.end()) {
        sum += it->second;
        ++count;
      }
    }
    out[year] = sum / count;
  }
  return out;
}

OwnershipSeries ownership_series(std::span<const PatentRecord> corpus, std::string_view country) {
  std::map<int, std::pair<long, long>> tally;
  for (const auto& p : corpus) {
    if (!p.has_inventor_in(country)) continue;
    auto& [num, den] = tally[p.grant_date.year];
    ++den;
    if (has_foreign_assignee(p, country)) ++num;
  }
  OwnershipSeries s;
  s.country = std::string(country);
  for (const auto& [year, nd] : tally) {
    s.raw[year] = static_cast<double>(nd.first) / static_cast<double>(nd.second);
  }
  s.smoothed = moving_average_3(s.raw);
  return s;
}

YearWindow YearWindow::parse(std::string_view text) {
  const auto t = trim(text);
  const auto dash = t.find('-');
  YearWindow w;
  if (dash == std::string::npos) {
    w.first = w.last = parse_year(t, t);
  } else {
    w.first = parse_year(std::string_view(t).substr(0, dash), t);
    w.last = parse_year(std::string_view(t).substr(dash + 1), t);
  }
  if (w.first > w.last) throw ConfigError("reversed year window '" + t + "'");
  return w;
}

std::string YearWindow::label() const {
  if (first == last) return std::to_string(first);
  return std::to_string(first) + "-" + std::to_string(last);
}

WindowAverage window_average(const std::map<int, double>& year_counts, const YearWindow& window) {
  WindowAverage out{window, 0.0, true};
  if (!year_counts.empty()) {
    const int lo = year_counts.begin()->first;
    const int hi = year_counts.rbegin()->first;
    out.outside_data = window.last < lo || window.first > hi;
  }
  if (out.outside_data) return out;
  double sum = 0.0;
  for (auto it = year_counts.lower_bound(window.first); it != year_counts.end() && it->first <= window.last;
       ++it) {
    sum += it->second;
  }
  out.average = sum / window.years();
  return out;
}

std::vector<WindowAverage> five_year_averages(const std::map<int, double>& year_counts,
                                              std::span<const YearWindow> windows) {
  std::vector<WindowAverage> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(window_average(year_counts, w));
  return out;
}

std::string control_csv(std::span<const ControlSummary> rows) {
  std::string out =
      "country,patents_international,patents_domestic,inventors_foreign,inventors_domestic,inventors_unknown\n";
  for (const auto& r : rows) {
    out += csv::join_row({r.country, std::to_string(r.patents_international), std::to_string(r.patents_domestic),
                          std::to_string(r.inventors_foreign), std::to_string(r.inventors_domestic),
                          std::to_string(r.inventors_unknown)});
  }
  return out;
}

std::string ownership_csv(std::span<const OwnershipSeries> series) {
  std::string out = "country,year,share_raw,share_ma3\n";
  for (const auto& s : series) {
    for (const auto& [year, raw] : s.raw) {
      out += csv::join_row({s.country, std::to_string(year), csv::fixed(raw, 6), csv::fixed(s.smoothed.at(year), 6)});
    }
  }
  return out;
}

std::string window_csv(std::span<const CountryWindows> rows) {
  std::string out = "country,window,avg_per_year\n";
  for (const auto& r : rows) {
    for (const auto& a : r.averages) {
      out += csv::join_row({r.country, a.window.label(), csv::fixed(a.average, 3)});
    }
  }
  return out;
}

namespace serial {
ControlSummary control_summary(std::span<const PatentRecord> corpus, std::string_view country,
                               InventorUnit unit) {
  ControlSummary s;
  s.country = std::string(country);
  for (const auto& p : corpus) {
    const auto scope = classify_patent_scope(p, country);
    if (scope == PatentScope::NoInventorInCountry) continue;
    count_scope(s, scope);
    if (unit != InventorUnit::Listing) continue;
    for (const auto& inv : p.inventors) {
      if (inv.country == country) count_inventor(s, classify_inventor_control(p, inv));
    }
  }
  if (unit == InventorUnit::Person) count_persons(corpus, country, s);
  return s;
}
}  // namespace serial

}  // namespace patlas
