#include "patlas/gazetteer.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

#include "patlas/csv.hpp"
#include "patlas/error.hpp"
#include "patlas/text.hpp"

namespace patlas {
namespace {

std::string index_key(std::string_view country, std::string_view name) {
  std::string key(country);
  key.push_back('\t');
  key.append(name);
  return key;
}

std::string address_key(const PartyAddress& a) {
  std::string key = index_key(a.country, normalize_name(a.city));
  key.push_back('\t');
  if (a.admin1) key += *a.admin1;
  return key;
}

double parse_double(const std::string& text, std::size_t row, const char* what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = first + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) throw ParseError(row, std::string("bad ") + what);
  return value;
}

long parse_long(const std::string& text, std::size_t row, const char* what) {
  long value = 0;
  const auto* first = text.data();
  const auto* last = first + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) throw ParseError(row, std::string("bad ") + what);
  return value;
}

// Index of the distinct address for each inventor, plus the distinct list.
struct AddressTable {
  std::vector<ResolvedAddress> addresses;
  std::vector<PartyAddress> representatives;
  std::vector<std::vector<std::size_t>> inventor_address;
};

AddressTable collect_addresses(std::span<const PatentRecord> records) {
  AddressTable t;
  std::unordered_map<std::string, std::size_t> seen;
  t.inventor_address.resize(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    auto& slots = t.inventor_address[r];
    slots.reserve(records[r].inventors.size());
    for (const auto& inv : records[r].inventors) {
      auto [it, inserted] = seen.try_emplace(address_key(inv), t.addresses.size());
      if (inserted) {
        ResolvedAddress ra;
        ra.city = inv.city;
        ra.admin1 = inv.admin1;
        ra.country = inv.country;
        t.addresses.push_back(std::move(ra));
        t.representatives.push_back(inv);
      }
      ++t.addresses[it->second].occurrences;
      slots.push_back(it->second);
    }
  }
  return t;
}

}  // namespace

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
  std::set<std::tuple<std::string, std::string, std::string>> unique;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    e.ascii_name = normalize_name(e.name);
    if (e.ascii_name.empty()) throw Error("gazetteer: empty name in row " + std::to_string(i + 1));
    if (!(e.lat >= -90.0 && e.lat <= 90.0) || !(e.lon >= -180.0 && e.lon <= 180.0)) {
      throw Error("gazetteer: coordinates out of range for " + e.name);
    }
    if (e.population < 0) throw Error("gazetteer: negative population for " + e.name);
    for (auto& alt : e.alternates) alt = normalize_name(alt);
    std::erase_if(e.alternates, [&](const std::string& a) { return a.empty() || a == e.ascii_name; });
    std::sort(e.alternates.begin(), e.alternates.end());
    e.alternates.erase(std::unique(e.alternates.begin(), e.alternates.end()), e.alternates.end());
    if (!unique.emplace(e.country, e.ascii_name, e.admin1.value_or("")).second) {
      throw Error("gazetteer: duplicate entry " + e.name + " (" + e.country + ")");
    }
    by_name_[index_key(e.country, e.ascii_name)].push_back(i);
    for (const auto& alt : e.alternates) by_alternate_[index_key(e.country, alt)].push_back(i);
  }
}

Gazetteer Gazetteer::parse_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  static const std::vector<std::string> kHeader = {"name",  "ascii_name", "alternates", "country",
                                                   "admin1", "lat",       "lon",        "population"};
  if (rows.empty() || rows[0] != kHeader) throw ParseError(1, "gazetteer header mismatch");
  std::vector<GazetteerEntry> entries;
  entries.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto line = r + 1;
    if (row.size() != kHeader.size()) throw ParseError(line, "wrong field count");
    GazetteerEntry e;
    e.name = trim(row[0]);
    const auto ascii = normalize_name(row[1]);
    std::size_t pos = 0;
    const auto& alts = row[2];
    while (pos <= alts.size()) {
      auto end = alts.find(';', pos);
      if (end == std::string::npos) end = alts.size();
      e.alternates.push_back(alts.substr(pos, end - pos));
      pos = end + 1;
    }
    if (!ascii.empty()) e.alternates.push_back(ascii);
    e.country = to_upper_ascii(trim(row[3]));
    if (e.country.size() != 2) throw ParseError(line, "bad country");
    if (auto a = trim(row[4]); !a.empty()) e.admin1 = to_upper_ascii(a);
    e.lat = parse_double(trim(row[5]), line, "lat");
    e.lon = parse_double(trim(row[6]), line, "lon");
    e.population = parse_long(trim(row[7]), line, "population");
    entries.push_back(std::move(e));
  }
  return Gazetteer(std::move(entries));
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  return parse_csv(csv::read_file(path));
}

std::optional<GeoLocation> Gazetteer::pick(const std::vector<std::size_t>& candidates,
                                           const std::optional<std::string>& admin1) const {
  if (candidates.empty()) return std::nullopt;
  std::vector<std::size_t> pool = candidates;
  if (admin1) {
    std::vector<std::size_t> narrowed;
    for (auto i : pool) {
      if (entries_[i].admin1 == admin1) narrowed.push_back(i);
    }
    if (!narrowed.empty()) pool = std::move(narrowed);
  }
  // Highest population; lowest row index breaks exact ties.
  auto best = *std::min_element(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
    if (entries_[a].population != entries_[b].population) {
      return entries_[a].population > entries_[b].population;
    }
    return a < b;
  });
  const auto& e = entries_[best];
  return GeoLocation{e.lat, e.lon, e.name, e.admin1, e.population, pool.size() > 1, best};
}

std::optional<GeoLocation> Gazetteer::geocode(const PartyAddress& addr) const {
  const auto key = index_key(addr.country, normalize_name(addr.city));
  if (auto it = by_name_.find(key); it != by_name_.end()) return pick(it->second, addr.admin1);
  if (auto it = by_alternate_.find(key); it != by_alternate_.end()) {
    return pick(it->second, addr.admin1);
  }
  return std::nullopt;
}

std::size_t GeocodedCorpus::matched_listings() const {
  std::size_t n = 0;
  for (const auto& a : addresses) {
    if (a.geo) n += a.occurrences;
  }
  return n;
}

std::size_t GeocodedCorpus::unmatched_listings() const {
  std::size_t n = 0;
  for (const auto& a : addresses) {
    if (!a.geo) n += a.occurrences;
  }
  return n;
}

double GeocodedCorpus::unmatched_rate() const {
  const auto total = matched_listings() + unmatched_listings();
  return total == 0 ? 0.0 : static_cast<double>(unmatched_listings()) / static_cast<double>(total);
}

GeocodedCorpus geocode_corpus(std::span<const PatentRecord> records, const Gazetteer& g) {
  auto table = collect_addresses(records);
  const auto n = static_cast<std::ptrdiff_t>(table.addresses.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    table.addresses[i].geo = g.geocode(table.representatives[i]);
  }
  return GeocodedCorpus{std::move(table.addresses), std::move(table.inventor_address)};
}

namespace serial {
GeocodedCorpus geocode_corpus(std::span<const PatentRecord> records, const Gazetteer& g) {
  GeocodedCorpus out;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& r : records) {
    std::vector<std::size_t> slots;
    for (const auto& inv : r.inventors) {
      auto [it, inserted] = seen.try_emplace(address_key(inv), out.addresses.size());
      if (inserted) {
        out.addresses.push_back({inv.city, inv.admin1, inv.country, g.geocode(inv), 0});
      }
      ++out.addresses[it->second].occurrences;
      slots.push_back(it->second);
    }
    out.inventor_address.push_back(std::move(slots));
  }
  return out;
}
}  // namespace serial

std::string unmatched_report_csv(const GeocodedCorpus& geocoded) {
  std::vector<const ResolvedAddress*> rows;
  for (const auto& a : geocoded.addresses) {
    if (!a.geo) rows.push_back(&a);
  }
  std::sort(rows.begin(), rows.end(), [](const ResolvedAddress* a, const ResolvedAddress* b) {
    return std::tie(a->country, a->city, a->admin1) < std::tie(b->country, b->city, b->admin1);
  });
  std::string out = "city,admin1,country,occurrences\n";
  for (const auto* a : rows) {
    out += csv::join_row({a->city, a->admin1.value_or(""), a->country, std::to_string(a->occurrences)});
  }
  return out;
}

}  // namespace patlas
