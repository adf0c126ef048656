#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "patlas/records.hpp"

namespace patlas {

struct GazetteerEntry {
  std::string name;
  std::string ascii_name;               // normalize_name(name)
  std::vector<std::string> alternates;  // normalized, sorted, unique
  std::string country;
  std::optional<std::string> admin1;
  double lat = 0.0;
  double lon = 0.0;
  long population = 0;
};

struct GeoLocation {
  double lat = 0.0;
  double lon = 0.0;
  std::string matched_name;
  std::optional<std::string> admin1;
  long population = 0;
  bool ambiguous = false;
  std::size_t entry_index = 0;  // row in the gazetteer that resolved the address

  bool operator==(const GeoLocation&) const = default;
};

// Immutable city lookup table. Lookups are const and safe to run
// concurrently once constructed.
class Gazetteer {
 public:
  Gazetteer() = default;
  // Validates coordinates, populations and (country, name, admin1)
  // uniqueness; throws Error on violation.
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  // CSV with header name,ascii_name,alternates,country,admin1,lat,lon,population.
  // An ascii_name column that disagrees with normalize_name(name) is kept as
  // an extra alternate.
  static Gazetteer parse_csv(std::string_view text);
  static Gazetteer load(const std::filesystem::path& path);

  // Match precedence: exact normalized name, then alternates. An admin1 on
  // the address narrows the candidates of the winning tier when any candidate
  // carries it. Remaining ties go to the most populous row and are flagged
  // ambiguous.
  std::optional<GeoLocation> geocode(const PartyAddress& addr) const;

  std::span<const GazetteerEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::optional<GeoLocation> pick(const std::vector<std::size_t>& candidates,
                                  const std::optional<std::string>& admin1) const;

  std::vector<GazetteerEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_name_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_alternate_;
};

// One distinct inventor address of a corpus and its resolution.
struct ResolvedAddress {
  std::string city;  // as first seen
  std::optional<std::string> admin1;
  std::string country;
  std::optional<GeoLocation> geo;
  std::size_t occurrences = 0;
};

struct GeocodedCorpus {
  std::vector<ResolvedAddress> addresses;
  // For each record, for each inventor: index into `addresses`.
  std::vector<std::vector<std::size_t>> inventor_address;

  std::size_t matched_listings() const;
  std::size_t unmatched_listings() const;
  double unmatched_rate() const;
};

// Resolves every inventor address of the corpus. Distinct addresses are
// geocoded in parallel.
GeocodedCorpus geocode_corpus(std::span<const PatentRecord> records, const Gazetteer& g);

// CSV `city,admin1,country,occurrences`, sorted by (country, city, admin1).
std::string unmatched_report_csv(const GeocodedCorpus& geocoded);

namespace serial {
GeocodedCorpus geocode_corpus(std::span<const PatentRecord> records, const Gazetteer& g);
}  // namespace serial

}  // namespace patlas
