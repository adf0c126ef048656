#include "patlas/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "patlas/csv.hpp"
#include "patlas/error.hpp"
#include "patlas/text.hpp"

namespace patlas {
namespace {

std::string key_text(const CityKey& k) {
  std::string s = k.country + ":" + k.name;
  if (!k.admin1.empty()) s += ":" + k.admin1;
  return s;
}

void require_patents(const GroupProfile& p) {
  if (p.total_patents() <= 0) throw Error("group " + p.group_id + ": no patenting locations");
}

// Emitted points (patents >= 1) with population ranks; PI left at zero.
std::vector<IntensityPoint> ranked_points(const GroupProfile& profile) {
  std::vector<IntensityPoint> points;
  for (const auto& loc : profile.locations) {
    if (loc.patents < 1) continue;
    if (loc.population <= 0) {
      throw Error("group " + profile.group_id + ": zero population for " + loc.label);
    }
    IntensityPoint p;
    p.key = loc.key;
    p.label = loc.label;
    p.patents = loc.patents;
    p.population = loc.population;
    points.push_back(std::move(p));
  }
  std::sort(points.begin(), points.end(), [](const IntensityPoint& a, const IntensityPoint& b) {
    if (a.population != b.population) return a.population > b.population;
    return a.key < b.key;
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].population_rank = i + 1;
    points[i].log_rank = std::log(static_cast<double>(i + 1));
  }
  return points;
}

}  // namespace

GroupSelector GroupSelector::parse(std::string_view text) {
  GroupSelector sel;
  std::size_t pos = 0;
  const std::string s = trim(text);
  while (pos <= s.size()) {
    auto end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    const auto clause_text = trim(std::string_view(s).substr(pos, end - pos));
    pos = end + 1;
    if (clause_text.empty()) {
      if (end == s.size()) break;
      throw ConfigError("empty clause in selector '" + s + "'");
    }
    SelectorClause clause;
    const auto colon = clause_text.find(':');
    clause.country = to_upper_ascii(trim(clause_text.substr(0, colon)));
    if (clause.country.size() != 2) throw ConfigError("bad country in selector '" + s + "'");
    if (colon != std::string::npos) {
      auto states = trim(clause_text.substr(colon + 1));
      if (!states.empty() && states[0] == '!') {
        clause.exclude = true;
        states = trim(states.substr(1));
      }
      std::size_t p = 0;
      while (p <= states.size()) {
        auto e = states.find('|', p);
        if (e == std::string::npos) e = states.size();
        auto code = to_upper_ascii(trim(states.substr(p, e - p)));
        if (code.empty()) throw ConfigError("empty admin1 in selector '" + s + "'");
        clause.admin1.insert(std::move(code));
        p = e + 1;
      }
    }
    sel.clauses.push_back(std::move(clause));
    if (end == s.size()) break;
  }
  if (sel.clauses.empty()) throw ConfigError("empty selector");
  return sel;
}

bool GroupSelector::matches(std::string_view country, const std::optional<std::string>& admin1) const {
  for (const auto& c : clauses) {
    if (c.country != country) continue;
    if (c.admin1.empty()) return true;
    const bool listed = admin1 && c.admin1.count(*admin1) != 0;
    if (listed != c.exclude) return true;
  }
  return false;
}

std::string GroupSelector::to_string() const {
  std::string out;
  for (const auto& c : clauses) {
    if (!out.empty()) out += ",";
    out += c.country;
    if (!c.admin1.empty()) {
      out += c.exclude ? ":!" : ":";
      bool first = true;
      for (const auto& a : c.admin1) {
        if (!first) out += "|";
        out += a;
        first = false;
      }
    }
  }
  return out;
}

long GroupProfile::total_patents() const {
  long s = 0;
  for (const auto& l : locations) s += l.patents;
  return s;
}

long GroupProfile::total_population() const {
  long s = 0;
  for (const auto& l : locations) s += l.population;
  return s;
}

GroupProfile build_group(std::string group_id, std::span<const CityAggregate> cities,
                         const Gazetteer& gazetteer, const GroupSelector& selector) {
  std::map<CityKey, long> patents;
  for (const auto& c : cities) {
    if (c.geo) patents[c.key] += c.patent_count;
  }
  GroupProfile profile;
  profile.group_id = std::move(group_id);
  profile.selector = selector;
  for (const auto& e : gazetteer.entries()) {
    if (!selector.matches(e.country, e.admin1)) continue;
    Location loc;
    loc.key = {e.country, e.ascii_name, e.admin1.value_or("")};
    loc.label = e.name;
    loc.population = e.population;
    if (auto it = patents.find(loc.key); it != patents.end()) loc.patents = it->second;
    profile.locations.push_back(std::move(loc));
  }
  if (profile.locations.empty()) {
    throw Error("group " + profile.group_id + ": selector " + selector.to_string() +
                " matches no gazetteer city");
  }
  std::sort(profile.locations.begin(), profile.locations.end(),
            [](const Location& a, const Location& b) { return a.key < b.key; });
  return profile;
}

std::vector<RankSizePoint> rank_size_series(const GroupProfile& profile) {
  require_patents(profile);
  std::vector<RankSizePoint> series;
  for (const auto& loc : profile.locations) {
    if (loc.patents > 0) series.push_back({0, loc.key, loc.label, loc.patents, 0.0, 0.0});
  }
  std::sort(series.begin(), series.end(), [](const RankSizePoint& a, const RankSizePoint& b) {
    if (a.patents != b.patents) return a.patents > b.patents;
    return a.key < b.key;
  });
  for (std::size_t i = 0; i < series.size(); ++i) {
    series[i].rank = i + 1;
    series[i].ln_rank = std::log(static_cast<double>(i + 1));
    series[i].ln_patents = std::log(static_cast<double>(series[i].patents));
  }
  return series;
}

std::vector<IntensityPoint> patenting_intensity(const GroupProfile& profile) {
  require_patents(profile);
  const double total_pat = static_cast<double>(profile.total_patents());
  const double total_pop = static_cast<double>(profile.total_population());
  auto points = ranked_points(profile);
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& p = points[i];
    p.pi = (static_cast<double>(p.patents) * total_pop) / (static_cast<double>(p.population) * total_pat);
    p.log_pi = std::log(p.pi);
  }
  return points;
}

std::vector<XY> intensity_rank_series(const GroupProfile& profile) {
  std::vector<XY> xy;
  for (const auto& p : patenting_intensity(profile)) xy.push_back({p.log_rank, p.log_pi});
  return xy;
}

LineFit loglog_slope(std::span<const XY> points) {
  if (points.size() < 2) throw Error("line fit needs at least two points");
  const double n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - mx;
    const double dy = p.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error("line fit needs two distinct x values");
  LineFit fit;
  fit.n = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

std::vector<IntensityPoint> detect_hubs(const GroupProfile& profile, std::size_t top_k) {
  auto points = patenting_intensity(profile);
  if (points.size() > top_k) points.resize(top_k);
  std::erase_if(points, [](const IntensityPoint& p) { return !(p.pi > 1.0); });
  std::sort(points.begin(), points.end(), [](const IntensityPoint& a, const IntensityPoint& b) {
    if (a.pi != b.pi) return a.pi > b.pi;
    return a.key < b.key;
  });
  return points;
}

std::string rank_size_csv(std::span<const RankSizePoint> series) {
  std::string out = "rank,patents,ln_rank,ln_patents\n";
  for (const auto& p : series) {
    out += csv::join_row({std::to_string(p.rank), std::to_string(p.patents), csv::fixed(p.ln_rank, 6),
                          csv::fixed(p.ln_patents, 6)});
  }
  return out;
}

std::string intensity_csv(std::span<const IntensityPoint> points) {
  std::string out = "key,population,patents,PI,pop_rank,ln_pop_rank,ln_PI\n";
  for (const auto& p : points) {
    out += csv::join_row({key_text(p.key), std::to_string(p.population), std::to_string(p.patents),
                          csv::fixed(p.pi, 6), std::to_string(p.population_rank),
                          csv::fixed(p.log_rank, 6), csv::fixed(p.log_pi, 6)});
  }
  return out;
}

namespace serial {
std::vector<IntensityPoint> patenting_intensity(const GroupProfile& profile) {
  require_patents(profile);
  const double total_pat = static_cast<double>(profile.total_patents());
  const double total_pop = static_cast<double>(profile.total_population());
  auto points = ranked_points(profile);
  for (auto& p : points) {
    p.pi = (static_cast<double>(p.patents) / total_pat) / (static_cast<double>(p.population) / total_pop);
    p.log_pi = std::log(p.pi);
  }
  return points;
}
}  // namespace serial

}  // namespace patlas
