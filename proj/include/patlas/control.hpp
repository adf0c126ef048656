#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patlas/citystats.hpp"
#include "patlas/records.hpp"

namespace patlas {

enum class PatentScope { ExclusivelyDomestic, InternationalCooperation, NoInventorInCountry };

enum class InventorControl { ForeignAssignee, DomesticAssignee, Unknown };

// Unit of the inventor rows of a control summary. Listing counts every
// inventor line of every patent; Person counts distinct inventor names per
// control class (unnamed listings count individually).
enum class InventorUnit { Listing, Person };

std::optional<InventorUnit> parse_inventor_unit(std::string_view text);

PatentScope classify_patent_scope(const PatentRecord& p, std::string_view country);

// Unknown when no assignee has a known country; Domestic when one of them
// shares the inventor's country; Foreign otherwise.
InventorControl classify_inventor_control(const PatentRecord& p, const PartyAddress& inventor);

struct ControlSummary {
  std::string country;
  long patents_international = 0;
  long patents_domestic = 0;
  long inventors_foreign = 0;
  long inventors_domestic = 0;
  long inventors_unknown = 0;

  ControlSummary& operator+=(const ControlSummary& other);
  bool operator==(const ControlSummary&) const = default;
};

ControlSummary control_summary(std::span<const PatentRecord> corpus, std::string_view country,
                               InventorUnit unit = InventorUnit::Listing);

// Share of the year's patents with an inventor in `country` that have at
// least one assignee whose known country differs. 0 for an empty year.
double foreign_ownership_share(std::span<const PatentRecord> corpus, std::string_view country, int year);

// smoothed(t) = mean of the raw values present among t-1, t, t+1.
std::map<int, double> moving_average_3(const std::map<int, double>& raw);

struct OwnershipSeries {
  std::string country;
  std::map<int, double> raw;
  std::map<int, double> smoothed;
};

// Raw shares for every grant year in which the country has patents.
OwnershipSeries ownership_series(std::span<const PatentRecord> corpus, std::string_view country);

struct YearWindow {
  int first = 0;
  int last = 0;

  // "1981-1985" or a single year "2007".
  static YearWindow parse(std::string_view text);
  std::string label() const;
  int years() const { return last - first + 1; }

  bool operator==(const YearWindow&) const = default;
};

struct WindowAverage {
  YearWindow window;
  double average = 0.0;
  bool outside_data = false;  // no year of the window lies within the data range
};

WindowAverage window_average(const std::map<int, double>& year_counts, const YearWindow& window);

std::vector<WindowAverage> five_year_averages(const std::map<int, double>& year_counts,
                                              std::span<const YearWindow> windows);

std::string control_csv(std::span<const ControlSummary> rows);
std::string ownership_csv(std::span<const OwnershipSeries> series);

struct CountryWindows {
  std::string country;
  std::vector<WindowAverage> averages;
};
std::string window_csv(std::span<const CountryWindows> rows);

namespace serial {
ControlSummary control_summary(std::span<const PatentRecord> corpus, std::string_view country,
                               InventorUnit unit = InventorUnit::Listing);
}  // namespace serial

}  // namespace patlas
