#include "patlas/citystats.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "patlas/csv.hpp"
#include "patlas/text.hpp"

namespace patlas {
namespace {

CityKey city_key(const ResolvedAddress& a) {
  if (a.geo) return {a.country, normalize_name(a.geo->matched_name), a.geo->admin1.value_or("")};
  return {a.country, normalize_name(a.city), ""};
}

// Distinct city list plus the city of every distinct address.
struct CityIndex {
  std::vector<CityAggregate> cities;  // sorted by key, counts zero
  std::vector<std::size_t> of_address;
};

CityIndex index_cities(const GeocodedCorpus& geocoded) {
  std::map<CityKey, std::size_t> first_address;
  for (std::size_t i = 0; i < geocoded.addresses.size(); ++i) {
    first_address.try_emplace(city_key(geocoded.addresses[i]), i);
  }
  CityIndex idx;
  std::map<CityKey, std::size_t> position;
  for (const auto& [key, addr] : first_address) {
    const auto& a = geocoded.addresses[addr];
    CityAggregate c;
    c.key = key;
    c.label = a.geo ? a.geo->matched_name : a.city;
    c.geo = a.geo;
    if (c.geo) c.geo->ambiguous = false;
    position.emplace(key, idx.cities.size());
    idx.cities.push_back(std::move(c));
  }
  // Flag a city ambiguous when any address resolving to it was.
  idx.of_address.resize(geocoded.addresses.size());
  for (std::size_t i = 0; i < geocoded.addresses.size(); ++i) {
    const auto& a = geocoded.addresses[i];
    const auto p = position.at(city_key(a));
    idx.of_address[i] = p;
    if (a.geo && a.geo->ambiguous) idx.cities[p].geo->ambiguous = true;
  }
  return idx;
}

void distinct_cities(const std::vector<std::size_t>& slots, const std::vector<std::size_t>& of_address,
                     std::vector<std::size_t>& out) {
  out.clear();
  for (auto s : slots) out.push_back(of_address[s]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::optional<double> fractional_weight(const PatentRecord& r, std::string_view country,
                                        CountingMode mode) {
  std::size_t inside = 0;
  for (const auto& a : r.inventors) {
    if (a.country == country) ++inside;
  }
  if (inside == 0) return std::nullopt;
  if (mode == CountingMode::Whole) return 1.0;
  return static_cast<double>(inside) / static_cast<double>(r.inventors.size());
}

}  // namespace

// --- classes and palette ---------------------------------------------------

std::string_view SignificanceClass::color_hex() const {
  switch (kind) {
    case SignificanceKind::SigAbove: return "006400";
    case SignificanceKind::Above: return "90EE90";
    case SignificanceKind::AboveSmallE: return "32CD32";
    case SignificanceKind::SigBelow: return "8B0000";
    case SignificanceKind::Below: return "FFA500";
    case SignificanceKind::BelowSmallE: return "FF4500";
  }
  return "32CD32";
}

std::string SignificanceClass::stars() const {
  if (kind == SignificanceKind::SigAbove || kind == SignificanceKind::SigBelow) {
    return std::string(static_cast<std::size_t>(level), '*');
  }
  return "";
}

std::string SignificanceClass::name() const {
  switch (kind) {
    case SignificanceKind::SigAbove: return "SigAbove";
    case SignificanceKind::Above: return "Above";
    case SignificanceKind::AboveSmallE: return "AboveSmallE";
    case SignificanceKind::SigBelow: return "SigBelow";
    case SignificanceKind::Below: return "Below";
    case SignificanceKind::BelowSmallE: return "BelowSmallE";
  }
  return "AboveSmallE";
}

std::string_view color_hex(RankClass c) {
  switch (c) {
    case RankClass::Top1: return "FF0000";
    case RankClass::Top5: return "FF00FF";
    case RankClass::Top10: return "FFC0CB";
    case RankClass::Top25: return "FFA500";
    case RankClass::Top50: return "00FFFF";
    case RankClass::Bottom50: return "0000FF";
  }
  return "0000FF";
}

std::string_view to_string(RankClass c) {
  switch (c) {
    case RankClass::Top1: return "Top1";
    case RankClass::Top5: return "Top5";
    case RankClass::Top10: return "Top10";
    case RankClass::Top25: return "Top25";
    case RankClass::Top50: return "Top50";
    case RankClass::Bottom50: return "Bottom50";
  }
  return "Bottom50";
}

// --- highly cited set ------------------------------------------------------

std::optional<long> top_cited_threshold(std::span<const long> citations, double fraction) {
  if (citations.empty()) return std::nullopt;
  std::vector<long> sorted(citations.begin(), citations.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double target = fraction * static_cast<double>(sorted.size());

  // Candidate "above the maximum": selects nothing.
  std::optional<long> best;
  double best_dist = target;
  std::size_t best_count = 0;
  std::size_t i = 0;
  while (i < sorted.size() && sorted[i] >= 1) {
    const long value = sorted[i];
    while (i < sorted.size() && sorted[i] == value) ++i;
    const double dist = std::abs(static_cast<double>(i) - target);
    if (dist < best_dist || (dist == best_dist && i > best_count)) {
      best = value;
      best_dist = dist;
      best_count = i;
    }
  }
  return best;
}

std::vector<char> top_cited_mask(std::span<const PatentRecord> records, double fraction) {
  std::vector<long> citations;
  citations.reserve(records.size());
  for (const auto& r : records) citations.push_back(r.cited_by_count);
  const auto threshold = top_cited_threshold(citations, fraction);
  std::vector<char> mask(records.size(), 0);
  if (!threshold) return mask;
  for (std::size_t i = 0; i < records.size(); ++i) mask[i] = records[i].cited_by_count >= *threshold;
  return mask;
}

std::set<std::string> top_cited_set(std::span<const PatentRecord> records, double fraction) {
  const auto mask = top_cited_mask(records, fraction);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (mask[i]) ids.insert(records[i].id);
  }
  return ids;
}

// --- aggregation -----------------------------------------------------------

std::vector<CityAggregate> aggregate_by_city(std::span<const PatentRecord> records,
                                             const GeocodedCorpus& geocoded,
                                             std::span<const char> top_cited) {
  auto idx = index_cities(geocoded);
  const std::size_t m = idx.cities.size();
  std::vector<long> patents(m, 0);
  std::vector<long> tops(m, 0);
  const auto n = static_cast<std::ptrdiff_t>(records.size());

#pragma omp parallel
  {
    std::vector<long> local_patents(m, 0);
    std::vector<long> local_tops(m, 0);
    std::vector<std::size_t> cities;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      distinct_cities(geocoded.inventor_address[r], idx.of_address, cities);
      const bool top = !top_cited.empty() && top_cited[r];
      for (auto c : cities) {
        ++local_patents[c];
        if (top) ++local_tops[c];
      }
    }
#pragma omp critical(patlas_aggregate_merge)
    for (std::size_t c = 0; c < m; ++c) {
      patents[c] += local_patents[c];
      tops[c] += local_tops[c];
    }
  }

  for (std::size_t c = 0; c < m; ++c) {
    idx.cities[c].patent_count = patents[c];
    idx.cities[c].top_cited_count = tops[c];
  }
  return std::move(idx.cities);
}

// --- citation test ---------------------------------------------------------

double expected_top_cited(long n1, long X, long N) {
  if (N <= 0) return 0.0;
  return static_cast<double>(n1) * static_cast<double>(X) / static_cast<double>(N);
}

std::optional<double> ztest_city(long x1, long n1, long X, long N) {
  const long n2 = N - n1;
  if (n1 <= 0 || n2 <= 0) return std::nullopt;
  if (expected_top_cited(n1, X, N) <= kMinExpected) return std::nullopt;
  const long x2 = X - x1;
  const double p1 = static_cast<double>(x1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(x2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(X) / static_cast<double>(N);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  // Every patent highly cited: both proportions are 1.
  if (se == 0.0) return 0.0;
  return (p1 - p2) / se;
}

SignificanceClass classify_significance(std::optional<double> z, double expected, int direction) {
  const bool above = direction >= 0;
  if (expected <= kMinExpected || !z) {
    return {above ? SignificanceKind::AboveSmallE : SignificanceKind::BelowSmallE, 0};
  }
  const double magnitude = std::abs(*z);
  int level = 0;
  for (int k = 0; k < 3; ++k) {
    if (magnitude >= kCritical[k]) level = k + 1;
  }
  const bool positive = *z > 0.0 || (*z == 0.0 && above);
  if (level == 0) return {positive ? SignificanceKind::Above : SignificanceKind::Below, 0};
  return {positive ? SignificanceKind::SigAbove : SignificanceKind::SigBelow, level};
}

void apply_citation_tests(std::vector<CityAggregate>& cities, long X, long N) {
  const double rate = N > 0 ? static_cast<double>(X) / static_cast<double>(N) : 0.0;
  for (auto& c : cities) {
    c.expected_top_cited = expected_top_cited(c.patent_count, X, N);
    c.z_score = ztest_city(c.top_cited_count, c.patent_count, X, N);
    const double observed = c.patent_count > 0
                                ? static_cast<double>(c.top_cited_count) / static_cast<double>(c.patent_count)
                                : 0.0;
    const int direction = observed > rate ? 1 : (observed < rate ? -1 : 0);
    c.significance = classify_significance(c.z_score, c.expected_top_cited, direction);
  }
}

// --- portfolio ranks -------------------------------------------------------

std::vector<double> percentile_quantiles(std::span<const long> counts) {
  std::vector<long> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> q(counts.size(), 0.0);
  const double total = static_cast<double>(counts.size());
  const auto n = static_cast<std::ptrdiff_t>(counts.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto fewer = std::lower_bound(sorted.begin(), sorted.end(), counts[i]) - sorted.begin();
    q[i] = static_cast<double>(fewer) / total;
  }
  return q;
}

RankClass rank_class(double q) {
  if (q >= 0.99) return RankClass::Top1;
  if (q >= 0.95) return RankClass::Top5;
  if (q >= 0.90) return RankClass::Top10;
  if (q >= 0.75) return RankClass::Top25;
  if (q >= 0.50) return RankClass::Top50;
  return RankClass::Bottom50;
}

void apply_rank_classes(std::vector<CityAggregate>& cities, long min_patents) {
  std::vector<std::size_t> ranked;
  std::vector<long> counts;
  for (std::size_t i = 0; i < cities.size(); ++i) {
    cities[i].quantile.reset();
    cities[i].rank_class.reset();
    if (cities[i].patent_count >= min_patents && cities[i].patent_count > 0) {
      ranked.push_back(i);
      counts.push_back(cities[i].patent_count);
    }
  }
  const auto q = percentile_quantiles(counts);
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    cities[ranked[k]].quantile = q[k];
    cities[ranked[k]].rank_class = rank_class(q[k]);
  }
}

// --- country totals --------------------------------------------------------

std::optional<CountingMode> parse_counting_mode(std::string_view text) {
  if (text == "whole") return CountingMode::Whole;
  if (text == "fractional") return CountingMode::Fractional;
  return std::nullopt;
}

std::map<int, double> country_year_counts(std::span<const PatentRecord> records,
                                          std::string_view country, CountingMode mode) {
  std::vector<double> weight(records.size(), 0.0);
  std::vector<char> counted(records.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (const auto w = fractional_weight(records[i], country, mode)) {
      weight[i] = *w;
      counted[i] = 1;
    }
  }
  // Sequential reduction keeps the floating-point sum order fixed.
  std::map<int, double> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (counted[i]) out[records[i].grant_date.year] += weight[i];
  }
  return out;
}

std::string city_table_csv(std::span<const CityAggregate> cities) {
  std::string out = "city,country,lat,lon,patents,top_cited,expected,z,stars,significance_class,quantile,rank_class\n";
  for (const auto& c : cities) {
    out += csv::join_row({
        c.label,
        c.key.country,
        c.geo ? csv::fixed(c.geo->lat, 6) : "",
        c.geo ? csv::fixed(c.geo->lon, 6) : "",
        std::to_string(c.patent_count),
        std::to_string(c.top_cited_count),
        csv::fixed(c.expected_top_cited, 6),
        c.z_score ? csv::fixed(*c.z_score, 6) : "",
        c.significance.stars(),
        c.significance.name(),
        c.quantile ? csv::fixed(*c.quantile, 6) : "",
        c.rank_class ? std::string(to_string(*c.rank_class)) : "",
    });
  }
  return out;
}

namespace serial {

std::vector<CityAggregate> aggregate_by_city(std::span<const PatentRecord> records,
                                             const GeocodedCorpus& geocoded,
                                             std::span<const char> top_cited) {
  std::map<CityKey, CityAggregate> by_key;
  for (std::size_t r = 0; r < records.size(); ++r) {
    std::set<CityKey> seen;
    for (auto slot : geocoded.inventor_address[r]) {
      const auto& a = geocoded.addresses[slot];
      const auto key = city_key(a);
      auto [it, inserted] = by_key.try_emplace(key);
      if (inserted) {
        it->second.key = key;
        it->second.label = a.geo ? a.geo->matched_name : a.city;
        it->second.geo = a.geo;
      } else if (a.geo && a.geo->ambiguous) {
        it->second.geo->ambiguous = true;
      }
      if (!seen.insert(key).second) continue;
      ++it->second.patent_count;
      if (!top_cited.empty() && top_cited[r]) ++it->second.top_cited_count;
    }
  }
  // Cities only reachable through addresses of no record still appear.
  for (const auto& a : geocoded.addresses) {
    auto [it, inserted] = by_key.try_emplace(city_key(a));
    if (inserted) {
      it->second.key = city_key(a);
      it->second.label = a.geo ? a.geo->matched_name : a.city;
      it->second.geo = a.geo;
    }
  }
  std::vector<CityAggregate> out;
  for (auto& [key, c] : by_key) out.push_back(std::move(c));
  return out;
}

std::vector<double> percentile_quantiles(std::span<const long> counts) {
  std::vector<long> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> q;
  q.reserve(counts.size());
  for (auto c : counts) {
    const auto fewer = std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin();
    q.push_back(static_cast<double>(fewer) / static_cast<double>(counts.size()));
  }
  return q;
}

std::map<int, double> country_year_counts(std::span<const PatentRecord> records,
                                          std::string_view country, CountingMode mode) {
  std::map<int, double> out;
  for (const auto& r : records) {
    if (const auto w = fractional_weight(r, country, mode)) out[r.grant_date.year] += *w;
  }
  return out;
}

}  // namespace serial
}  // namespace patlas
