#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patlas/citystats.hpp"
#include "patlas/gazetteer.hpp"

namespace patlas {

// One country, optionally restricted to (or, with `exclude`, excluding) a
// set of admin1 codes.
struct SelectorClause {
  std::string country;
  std::set<std::string> admin1;
  bool exclude = false;

  bool operator==(const SelectorClause&) const = default;
};

// Territory selector written as comma-separated clauses:
//   "CZ,HU,PL,SK"            whole countries
//   "DE:BB|MV|SN|ST|TH|BE"   listed states of one country
//   "DE:!BB|MV|SN|ST|TH|BE"  the remaining states
struct GroupSelector {
  std::vector<SelectorClause> clauses;

  static GroupSelector parse(std::string_view text);
  bool matches(std::string_view country, const std::optional<std::string>& admin1) const;
  std::string to_string() const;

  bool operator==(const GroupSelector&) const = default;
};

struct Location {
  CityKey key;
  std::string label;
  long patents = 0;
  long population = 0;
};

struct GroupProfile {
  std::string group_id;
  GroupSelector selector;
  std::vector<Location> locations;  // sorted by key

  long total_patents() const;
  long total_population() const;
};

// All gazetteer cities matched by the selector, with patents taken from the
// aggregates (0 where absent). Throws Error when nothing matches.
GroupProfile build_group(std::string group_id, std::span<const CityAggregate> cities,
                         const Gazetteer& gazetteer, const GroupSelector& selector);

struct RankSizePoint {
  std::size_t rank = 0;
  CityKey key;
  std::string label;
  long patents = 0;
  double ln_rank = 0.0;
  double ln_patents = 0.0;
};

// Non-zero locations by patents descending, ties by key. Throws Error
// "no patenting locations" when every location has zero patents.
std::vector<RankSizePoint> rank_size_series(const GroupProfile& profile);

struct IntensityPoint {
  CityKey key;
  std::string label;
  long patents = 0;
  long population = 0;
  double pi = 0.0;
  std::size_t population_rank = 0;  // 1 = most populous among emitted points
  double log_rank = 0.0;
  double log_pi = 0.0;
};

// PI_i = (PAT_i / sum PAT) / (POP_i / sum POP), both sums over the whole
// group. Points are emitted for locations with at least one patent, ordered
// by population rank. Throws on an all-zero group or a zero population
// among emitted points.
std::vector<IntensityPoint> patenting_intensity(const GroupProfile& profile);

struct XY {
  double x = 0.0;
  double y = 0.0;
};

// (ln population rank, ln PI) per emitted point.
std::vector<XY> intensity_rank_series(const GroupProfile& profile);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope * x. Throws Error on fewer
// than two points or a constant x.
LineFit loglog_slope(std::span<const XY> points);

// Among the top_k most populous emitted points, those with PI > 1 by PI
// descending.
std::vector<IntensityPoint> detect_hubs(const GroupProfile& profile, std::size_t top_k);

std::string rank_size_csv(std::span<const RankSizePoint> series);
std::string intensity_csv(std::span<const IntensityPoint> points);

namespace serial {
std::vector<IntensityPoint> patenting_intensity(const GroupProfile& profile);
}  // namespace serial

}  // namespace patlas
