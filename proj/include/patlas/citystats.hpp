#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patlas/gazetteer.hpp"
#include "patlas/records.hpp"

namespace patlas {

// Identifies a city: the resolved gazetteer row when geocoding succeeded,
// otherwise the normalized address name (admin1 empty).
struct CityKey {
  std::string country;
  std::string name;
  std::string admin1;

  auto operator<=>(const CityKey&) const = default;
};

// Two-sided critical values of the standard normal for p < .05, .01, .001.
inline constexpr double kCritical[3] = {1.959964, 2.575829, 3.290527};

// An expected count at or below this is not tested.
inline constexpr double kMinExpected = 5.0;

enum class SignificanceKind { SigAbove, Above, AboveSmallE, SigBelow, Below, BelowSmallE };

struct SignificanceClass {
  SignificanceKind kind = SignificanceKind::AboveSmallE;
  int level = 0;  // 1..3 for the Sig kinds, 0 otherwise

  std::string_view color_hex() const;
  std::string stars() const;  // "", "*", "**", "***"
  std::string name() const;

  bool operator==(const SignificanceClass&) const = default;
};

enum class RankClass { Top1, Top5, Top10, Top25, Top50, Bottom50 };

std::string_view color_hex(RankClass c);
std::string_view to_string(RankClass c);

struct CityAggregate {
  CityKey key;
  std::string label;  // display name: gazetteer name or raw address city
  std::optional<GeoLocation> geo;
  long patent_count = 0;     // n1
  long top_cited_count = 0;  // x1
  double expected_top_cited = 0.0;
  std::optional<double> z_score;
  SignificanceClass significance;
  // Set for cities in the ranked (map) set only.
  std::optional<double> quantile;
  std::optional<RankClass> rank_class;
};

// Smallest citation threshold c >= 1 whose selection |{cited >= c}| is
// closest to fraction * N; ties go to the lower c. nullopt means no patent
// is selected.
std::optional<long> top_cited_threshold(std::span<const long> citations, double fraction);

// Per-record membership flags of the highly cited set.
std::vector<char> top_cited_mask(std::span<const PatentRecord> records, double fraction);
std::set<std::string> top_cited_set(std::span<const PatentRecord> records, double fraction);

// Whole counting: a patent adds one to each distinct city among its
// inventors. Unmatched addresses still form cities (with no coordinates).
// Result sorted by key. `top_cited` is a mask aligned with `records`.
std::vector<CityAggregate> aggregate_by_city(std::span<const PatentRecord> records,
                                             const GeocodedCorpus& geocoded,
                                             std::span<const char> top_cited);

double expected_top_cited(long n1, long X, long N);

// Two-proportion z statistic of the city (x1 of n1) against the rest of the
// corpus (X - x1 of N - n1) with the pooled rate X/N. nullopt when the
// expected count n1*X/N is <= 5 or the city is the whole corpus.
std::optional<double> ztest_city(long x1, long n1, long X, long N);

// direction is the sign of x1/n1 - X/N.
SignificanceClass classify_significance(std::optional<double> z, double expected, int direction);

// Fills expected_top_cited, z_score and significance for every city.
void apply_citation_tests(std::vector<CityAggregate>& cities, long X, long N);

// q_i = |{j : count_j < count_i}| / n.
std::vector<double> percentile_quantiles(std::span<const long> counts);

RankClass rank_class(double q);

// Ranks the cities with at least `min_patents` patents among themselves and
// clears the rank of the others.
void apply_rank_classes(std::vector<CityAggregate>& cities, long min_patents);

enum class CountingMode { Whole, Fractional };

std::optional<CountingMode> parse_counting_mode(std::string_view text);

// Patents per grant year for one inventor country.
std::map<int, double> country_year_counts(std::span<const PatentRecord> records,
                                          std::string_view country, CountingMode mode);

// CSV `city,country,lat,lon,patents,top_cited,expected,z,stars,significance_class,quantile,rank_class`.
std::string city_table_csv(std::span<const CityAggregate> cities);

namespace serial {
std::vector<CityAggregate> aggregate_by_city(std::span<const PatentRecord> records,
                                             const GeocodedCorpus& geocoded,
                                             std::span<const char> top_cited);
std::vector<double> percentile_quantiles(std::span<const long> counts);
std::map<int, double> country_year_counts(std::span<const PatentRecord> records,
                                          std::string_view country, CountingMode mode);
}  // namespace serial

}  // namespace patlas
