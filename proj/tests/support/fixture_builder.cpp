#include "fixture_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "patlas/csv.hpp"
#include "patlas/text.hpp"

namespace patlas::fixtures {
namespace {

struct Place {
  const char* name;
  const char* spellings;  // "alt;alt|extra;extra"
  const char* country;
  const char* admin1;
  double lat;
  double lon;
  long population;
};

constexpr Place kPlaces[] = {
#include "places.inc"
};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto end = s.find(sep, pos);
    if (end == std::string_view::npos) end = s.size();
    if (end > pos) out.emplace_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> alternates_of(const Place& p) {
  const std::string_view s = p.spellings;
  return split(s.substr(0, s.find('|')), ';');
}

std::vector<std::string> extras_of(const Place& p) {
  const std::string_view s = p.spellings;
  const auto bar = s.find('|');
  if (bar == std::string_view::npos) return {};
  return split(s.substr(bar + 1), ';');
}

// Deterministic across platforms: only raw engine output is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(g_() % n); }
  double unit() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 g_;
};

struct Spelling {
  std::string city;
  std::optional<std::string> admin1;
};

// Place lookup and the address spellings that geocode back to each place.
class Atlas {
 public:
  Atlas() {
    std::vector<GazetteerEntry> entries;
    for (const auto& p : kPlaces) {
      GazetteerEntry e;
      e.name = p.name;
      e.alternates = alternates_of(p);
      e.country = p.country;
      if (*p.admin1) e.admin1 = p.admin1;
      e.lat = p.lat;
      e.lon = p.lon;
      e.population = p.population;
      entries.push_back(std::move(e));
    }
    gazetteer_ = Gazetteer(entries);
    for (std::size_t i = 0; i < std::size(kPlaces); ++i) {
      const auto& p = kPlaces[i];
      index_[key(p.country, p.name, p.admin1)] = i;
      std::vector<std::string> forms{p.name};
      for (auto& a : alternates_of(p)) forms.push_back(a);
      for (auto& a : extras_of(p)) forms.push_back(a);
      auto& out = spellings_[i];
      for (const auto& f : forms) {
        PartyAddress addr{f, std::nullopt, p.country, std::nullopt};
        if (resolves_to(addr, i)) {
          out.push_back({f, std::nullopt});
        } else {
          addr.admin1 = *p.admin1 ? std::optional<std::string>(p.admin1) : std::nullopt;
          if (resolves_to(addr, i)) out.push_back({f, addr.admin1});
        }
      }
      if (out.empty()) throw std::logic_error(std::string("no spelling resolves to ") + p.name);
    }
  }

  std::size_t find(std::string_view country, std::string_view name, std::string_view admin1 = "") const {
    if (auto it = index_.find(key(country, name, admin1)); it != index_.end()) return it->second;
    for (std::size_t i = 0; i < std::size(kPlaces); ++i) {
      if (kPlaces[i].country == country && kPlaces[i].name == name) return i;
    }
    throw std::logic_error("unknown place " + std::string(name) + " (" + std::string(country) + ")");
  }

  const Place& place(std::size_t i) const { return kPlaces[i]; }

  // The plain name most of the time, otherwise one of the other spellings.
  Spelling spell(std::size_t i, Rng& rng) const {
    const auto& s = spellings_.at(i);
    if (s.size() == 1 || rng.chance(0.6)) return s.front();
    return s[1 + rng.below(s.size() - 1)];
  }

  std::vector<std::size_t> in_country(std::string_view country) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < std::size(kPlaces); ++i) {
      if (kPlaces[i].country == country) out.push_back(i);
    }
    return out;
  }

 private:
  static std::string key(std::string_view c, std::string_view n, std::string_view a) {
    return std::string(c) + "|" + std::string(n) + "|" + std::string(a);
  }

  bool resolves_to(const PartyAddress& addr, std::size_t i) const {
    const auto g = gazetteer_.geocode(addr);
    return g && g->entry_index == i;
  }

  Gazetteer gazetteer_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::size_t, std::vector<Spelling>> spellings_;
};

const Atlas& atlas() {
  static const Atlas a;
  return a;
}

// Unique "Last; First M." names; a stride permutation avoids alphabetical runs.
class NameFactory {
 public:
  NameFactory(std::vector<std::string> first, std::vector<std::string> last)
      : first_(std::move(first)), last_(std::move(last)) {}

  std::string next() {
    const std::size_t space = first_.size() * last_.size() * 26;
    if (count_ >= space) throw std::logic_error("name space exhausted");
    std::size_t stride = 7919;
    while (std::gcd(stride, space) != 1) stride += 2;
    const std::size_t j = (count_++ * stride + 17) % space;
    const auto& f = first_[j % first_.size()];
    const auto& l = last_[(j / first_.size()) % last_.size()];
    const char initial = static_cast<char>('A' + (j / (first_.size() * last_.size())) % 26);
    return l + "; " + f + " " + initial + ".";
  }

 private:
  std::vector<std::string> first_;
  std::vector<std::string> last_;
  std::size_t count_ = 0;
};

NameFactory names_for(std::string_view country) {
  if (country == "HU") {
    return {{"László", "István", "József", "János", "Zoltán", "Sándor", "Gábor", "Ferenc", "Attila", "Péter",
             "Tamás", "Zsolt", "Balázs", "Csaba", "Katalin", "Erzsébet", "Ildikó", "Judit", "Éva", "Zsuzsanna"},
            {"Nagy", "Kovács", "Tóth", "Szabó", "Horváth", "Varga", "Kiss", "Molnár", "Németh", "Farkas",
             "Balogh", "Papp", "Takács", "Juhász", "Lakatos", "Mészáros", "Oláh", "Simon", "Rácz", "Fekete"}};
  }
  if (country == "CZ") {
    return {{"Jan", "Petr", "Josef", "Pavel", "Martin", "Tomáš", "Jaroslav", "Miroslav", "Zdeněk", "Václav",
             "Jana", "Marie", "Eva", "Hana", "Lenka"},
            {"Novák", "Svoboda", "Novotný", "Dvořák", "Černý", "Procházka", "Kučera", "Veselý", "Horák", "Němec",
             "Marek", "Pokorný", "Král", "Růžička", "Beneš"}};
  }
  if (country == "PL") {
    return {{"Piotr", "Krzysztof", "Andrzej", "Tomasz", "Paweł", "Marcin", "Michał", "Grzegorz", "Jan", "Marek",
             "Anna", "Maria", "Katarzyna", "Małgorzata", "Agnieszka"},
            {"Nowak", "Kowalski", "Wiśniewski", "Wójcik", "Kowalczyk", "Kamiński", "Lewandowski", "Zieliński",
             "Szymański", "Woźniak", "Dąbrowski", "Kozłowski", "Jankowski", "Mazur", "Kwiatkowski"}};
  }
  if (country == "SK") {
    return {{"Peter", "Martin", "Jozef", "Ján", "Michal", "Milan", "Miroslav", "Juraj", "Zuzana", "Mária"},
            {"Kováč", "Baláž", "Lukáč", "Hudák", "Krajčír", "Oravec", "Kráľ", "Šimko", "Polák", "Gajdoš"}};
  }
  if (country == "DE") {
    return {{"Hans", "Peter", "Klaus", "Michael", "Thomas", "Andreas", "Stefan", "Jürgen", "Wolfgang", "Frank",
             "Uwe", "Markus", "Matthias", "Christian", "Martin", "Ralf", "Bernd", "Dieter", "Jörg", "Holger",
             "Sabine", "Petra", "Claudia", "Andrea", "Susanne", "Monika", "Birgit", "Katrin", "Julia", "Anja"},
            {"Müller", "Schmidt", "Schneider", "Fischer", "Weber", "Meyer", "Wagner", "Becker", "Schulz",
             "Hoffmann", "Schäfer", "Koch", "Bauer", "Richter", "Klein", "Wolf", "Schröder", "Neumann",
             "Schwarz", "Zimmermann", "Braun", "Krüger", "Hofmann", "Hartmann", "Lange", "Schmitt", "Werner",
             "Schmitz", "Krause", "Meier", "Lehmann", "Schmid", "Schulze", "Maier", "Köhler", "Herrmann",
             "König", "Walter", "Mayer", "Huber"}};
  }
  return {{"John", "Michael", "David", "Robert", "James", "William", "Mary", "Jennifer", "Linda", "Susan",
           "Pierre", "Marco", "Lars", "Hiroshi", "Yuki", "Anders", "Sophie", "Giulia", "Wim", "Erik"},
          {"Smith", "Johnson", "Williams", "Brown", "Jones", "Miller", "Davis", "Wilson", "Anderson", "Taylor",
           "Dubois", "Rossi", "Jansen", "Tanaka", "Suzuki", "Larsson", "Nielsen", "Bianchi", "Moreau", "Gruber"}};
}

struct Company {
  const char* name;
  const char* country;
  OrgType type;
};

constexpr Company kForeignCompanies[] = {
    {"International Business Machines Corporation", "US", OrgType::MNE},
    {"General Electric Company", "US", OrgType::MNE},
    {"Microsoft Corporation", "US", OrgType::MNE},
    {"Honeywell International Inc.", "US", OrgType::MNE},
    {"Tyco Electronics Corporation", "US", OrgType::MNE},
    {"Teva Pharmaceutical Industries Ltd.", "IL", OrgType::MNE},
    {"Nokia Corporation", "FI", OrgType::MNE},
    {"Koninklijke Philips Electronics N.V.", "NL", OrgType::MNE},
    {"ABB Research Ltd.", "CH", OrgType::MNE},
    {"Novartis AG", "CH", OrgType::MNE},
    {"Sanofi-Aventis", "FR", OrgType::MNE},
    {"Telefonaktiebolaget LM Ericsson", "SE", OrgType::MNE},
    {"Sony Corporation", "JP", OrgType::MNE},
    {"Siemens Aktiengesellschaft", "DE", OrgType::MNE},
    {"Robert Bosch GmbH", "DE", OrgType::MNE},
};

std::vector<Company> domestic_companies(std::string_view country) {
  if (country == "HU") {
    return {{"Richter Gedeon Nyrt.", "HU", OrgType::BigDomestic},
            {"Genoid Kft.", "HU", OrgType::SME},
            {"EGIS Gyógyszergyár Nyrt.", "HU", OrgType::MNE},
            {"Teva Gyógyszergyár Zrt.", "HU", OrgType::MNE},
            {"NABI Rt.", "HU", OrgType::MNE},
            {"Tyco Electronics Hungary Kft.", "HU", OrgType::MNE}};
  }
  if (country == "CZ") {
    return {{"IQI s.r.o.", "CZ", OrgType::SME},
            {"Microrisc s.r.o.", "CZ", OrgType::SME},
            {"Bran a.s.", "CZ", OrgType::BigDomestic},
            {"Jihostroj a.s.", "CZ", OrgType::BigDomestic},
            {"Tescan s.r.o.", "CZ", OrgType::BigDomestic},
            {"BSC Holice a.s.", "CZ", OrgType::MNE},
            {"Uniplet Třebíč a.s.", "CZ", OrgType::MNE},
            {"Skoda Auto a.s.", "CZ", OrgType::MNE},
            {"Zentiva a.s.", "CZ", OrgType::MNE},
            {"TRW DAS a.s.", "CZ", OrgType::MNE},
            {"Chemopetrol a.s.", "CZ", OrgType::MNE},
            {"RWE Transgas a.s.", "CZ", OrgType::MNE}};
  }
  if (country == "PL") {
    return {{"Mectronic Sp. z o.o.", "PL", OrgType::SME},
            {"Tokarz Sp. z o.o.", "PL", OrgType::SME},
            {"Bury Sp. z o.o.", "PL", OrgType::SME},
            {"Emporio Spółka z o.o.", "PL", OrgType::SME},
            {"Adamed Sp. z o.o.", "PL", OrgType::BigDomestic},
            {"Seco/Warwick S.A.", "PL", OrgType::BigDomestic},
            {"ADB Polska Sp. z o.o.", "PL", OrgType::MNE}};
  }
  if (country == "SK") {
    return {{"HighChem s.r.o.", "SK", OrgType::SME}, {"Duslo a.s.", "SK", OrgType::BigDomestic}};
  }
  return {{"Siemens Aktiengesellschaft", "DE", OrgType::BigDomestic},
          {"Robert Bosch GmbH", "DE", OrgType::BigDomestic},
          {"BASF Aktiengesellschaft", "DE", OrgType::BigDomestic},
          {"Bayer AG", "DE", OrgType::BigDomestic},
          {"Daimler AG", "DE", OrgType::BigDomestic},
          {"Infineon Technologies AG", "DE", OrgType::BigDomestic},
          {"SAP AG", "DE", OrgType::BigDomestic},
          {"Carl Zeiss AG", "DE", OrgType::BigDomestic},
          {"Fraunhofer-Gesellschaft zur Förderung der angewandten Forschung e.V.", "DE", OrgType::BigDomestic},
          {"Henkel AG & Co. KGaA", "DE", OrgType::BigDomestic},
          {"Continental AG", "DE", OrgType::BigDomestic},
          {"Bayerische Motoren Werke Aktiengesellschaft", "DE", OrgType::BigDomestic},
          {"Volkswagen AG", "DE", OrgType::BigDomestic},
          {"Merck Patent GmbH", "DE", OrgType::BigDomestic},
          {"Heidelberger Druckmaschinen AG", "DE", OrgType::BigDomestic},
          {"Jenoptik AG", "DE", OrgType::SME},
          {"Novaled AG", "DE", OrgType::SME}};
}

std::vector<std::size_t> partner_places() {
  static const char* const kPartners[] = {"AT", "CH", "FR", "GB", "NL", "SE", "IT", "BE", "DK", "FI", "JP",
                                          "IL", "CA", "US"};
  std::vector<std::size_t> out;
  for (const char* c : kPartners) {
    for (auto i : atlas().in_country(c)) out.push_back(i);
  }
  return out;
}

Assignee make_assignee(const Company& c) {
  return {c.name, std::string(c.country), c.type};
}

// Tuesday issue dates through the year.
Date issue_date(int year, std::size_t week) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  // Jan 1 weekday by Zeller-style count; 0 = Monday.
  int y = year - 1;
  int jan1 = (y * 365 + y / 4 - y / 100 + y / 400) % 7;
  int first_tuesday = 1 + (1 - jan1 + 7) % 7;
  int doy = first_tuesday + 7 * static_cast<int>(week % 52);
  Date d{year, 1, doy};
  for (int m = 0; m < 12; ++m) {
    const int len = kDays[m] + (m == 1 && ((year % 4 == 0 && year % 100 != 0) || year % 400 == 0));
    if (d.day <= len) break;
    d.day -= len;
    d.month = m + 2;
  }
  return d;
}

long low_citations(Rng& rng) { return static_cast<long>(std::floor(13.0 * rng.unit() * rng.unit())); }
long high_citations(Rng& rng) { return 20 + static_cast<long>(std::floor(40.0 * rng.unit() * rng.unit())); }

// ---- 2007 reconstruction ---------------------------------------------------

enum class Control { Foreign, Domestic, Unknown };

struct ClassPlan {
  int international;
  int domestic;
  int listings;
};

struct Draft {
  std::vector<std::string> cities;  // home city tokens, distinct; "~x" = not in the gazetteer
  bool high = false;
  Control control = Control::Foreign;
  bool international = false;
  int listings = 0;
};

struct CountryPlan {
  std::string country;
  ClassPlan foreign;
  ClassPlan domestic;
  ClassPlan unknown;
  std::vector<std::pair<std::vector<std::string>, bool>> prescribed;  // city sets, high flag
  std::vector<std::pair<std::string, int>> anchors;                   // total incidences per city
  std::vector<std::string> singles;                                   // cities used once
  std::vector<std::pair<std::string, int>> high_in;                   // extra highs by city
  int extra_listing_cap = 3;
};

const std::set<std::string>& below_cities() {
  static const std::set<std::string> s{"Prague", "Brno", "Bratislava", "Debrecen"};
  return s;
}

bool contains(const Draft& d, const std::string& c) {
  return std::find(d.cities.begin(), d.cities.end(), c) != d.cities.end();
}

std::vector<Draft> draft_country(const CountryPlan& plan, Rng& rng) {
  const int total = plan.foreign.international + plan.foreign.domestic + plan.domestic.international +
                    plan.domestic.domestic + plan.unknown.international + plan.unknown.domestic;
  std::vector<Draft> sets;
  std::map<std::string, int> remaining;
  for (const auto& [c, n] : plan.anchors) remaining[c] = n;
  for (const auto& [cities, high] : plan.prescribed) {
    Draft d;
    d.cities = cities;
    d.high = high;
    for (const auto& c : cities) {
      if (auto it = remaining.find(c); it != remaining.end()) --it->second;
    }
    sets.push_back(std::move(d));
  }

  auto attach = [&](const std::string& city) {
    if (static_cast<int>(sets.size()) < total) {
      Draft d;
      d.cities = {city};
      sets.push_back(std::move(d));
      return;
    }
    Draft* best = nullptr;
    for (auto& d : sets) {
      if (contains(d, city) || d.high) continue;
      if (!best || d.cities.size() < best->cities.size()) best = &d;
    }
    if (!best) throw std::logic_error("cannot place " + city);
    best->cities.push_back(city);
  };

  for (const auto& [c, n] : plan.anchors) {
    if (remaining[c] < 0) throw std::logic_error("over-prescribed " + c);
    for (int k = 0; k < remaining[c]; ++k) attach(c);
  }
  // Singles fill the remaining patents first; highs are fixed before the
  // later singles are attached so those stay off highly cited patents.
  std::size_t s = 0;
  for (; s < plan.singles.size() && static_cast<int>(sets.size()) < total; ++s) attach(plan.singles[s]);
  for (const auto& [city, n] : plan.high_in) {
    for (int k = 0; k < n; ++k) {
      Draft* best = nullptr;
      for (auto& d : sets) {
        if (d.high || !contains(d, city)) continue;
        if (std::any_of(d.cities.begin(), d.cities.end(),
                        [](const std::string& c) { return below_cities().count(c) != 0; })) {
          continue;
        }
        if (!best || d.cities.size() < best->cities.size()) best = &d;
      }
      if (!best) throw std::logic_error("no set for high patent in " + city);
      best->high = true;
    }
  }
  for (; s < plan.singles.size(); ++s) attach(plan.singles[s]);
  if (static_cast<int>(sets.size()) != total) throw std::logic_error("patent count mismatch for " + plan.country);

  // Control classes and scopes, shuffled, then repaired to fit the listing budgets.
  std::vector<std::pair<Control, bool>> slots;
  auto add = [&](Control c, const ClassPlan& p) {
    for (int i = 0; i < p.international; ++i) slots.emplace_back(c, true);
    for (int i = 0; i < p.domestic; ++i) slots.emplace_back(c, false);
  };
  add(Control::Foreign, plan.foreign);
  add(Control::Domestic, plan.domestic);
  add(Control::Unknown, plan.unknown);
  rng.shuffle(slots);
  for (std::size_t i = 0; i < sets.size(); ++i) std::tie(sets[i].control, sets[i].international) = slots[i];

  auto budget = [&](Control c) {
    return c == Control::Foreign ? plan.foreign.listings
                                 : c == Control::Domestic ? plan.domestic.listings : plan.unknown.listings;
  };
  auto used = [&](Control c) {
    int n = 0;
    for (const auto& d : sets) {
      if (d.control == c) n += static_cast<int>(d.cities.size());
    }
    return n;
  };
  for (int guard = 0; guard < 10000; ++guard) {
    bool fixed = true;
    for (Control c : {Control::Foreign, Control::Domestic, Control::Unknown}) {
      if (used(c) <= budget(c)) continue;
      fixed = false;
      // Swap the largest set of the tight class with a smaller one elsewhere.
      std::size_t big = sets.size();
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].control == c && (big == sets.size() || sets[i].cities.size() > sets[big].cities.size())) big = i;
      }
      for (std::size_t j = 0; j < sets.size(); ++j) {
        const auto o = sets[j].control;
        if (o == c || sets[j].cities.size() >= sets[big].cities.size()) continue;
        const int delta = static_cast<int>(sets[big].cities.size() - sets[j].cities.size());
        if (used(o) + delta > budget(o)) continue;
        std::swap(sets[big].control, sets[j].control);
        std::swap(sets[big].international, sets[j].international);
        break;
      }
      break;
    }
    if (fixed) break;
  }
  for (Control c : {Control::Foreign, Control::Domestic, Control::Unknown}) {
    if (used(c) > budget(c)) throw std::logic_error("listing budget unreachable for " + plan.country);
  }

  for (auto& d : sets) d.listings = static_cast<int>(d.cities.size());
  for (Control c : {Control::Foreign, Control::Domestic, Control::Unknown}) {
    int extra = budget(c) - used(c);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].control == c) members.push_back(i);
    }
    while (extra > 0) {
      auto& d = sets[members[rng.below(members.size())]];
      if (d.listings >= static_cast<int>(d.cities.size()) + plan.extra_listing_cap) continue;
      ++d.listings;
      --extra;
    }
  }
  return sets;
}

PartyAddress address_for(const std::string& token, std::string_view country, Rng& rng) {
  PartyAddress a;
  a.country = std::string(country);
  if (token.front() == '~') {
    a.city = token.substr(1);
    return a;
  }
  const auto sp = atlas().spell(atlas().find(country, token), rng);
  a.city = sp.city;
  a.admin1 = sp.admin1;
  return a;
}

struct Emitter {
  std::vector<PatentRecord> out;
  std::size_t next_id = 0;
  Rng rng{20070101};
  NameFactory partners = names_for("");
  std::vector<std::size_t> partner_pool = partner_places();

  std::string id() { return std::to_string(7160000 + 13 * next_id++); }

  PartyAddress partner_inventor(std::size_t place) {
    const auto sp = atlas().spell(place, rng);
    return {sp.city, sp.admin1, atlas().place(place).country, partners.next()};
  }

  std::vector<Assignee> assignees(Control c, const std::string& country) {
    std::vector<Assignee> a;
    if (c == Control::Foreign) {
      for (;;) {
        const auto& co = kForeignCompanies[rng.below(std::size(kForeignCompanies))];
        if (co.country != country) {
          a.push_back(make_assignee(co));
          break;
        }
      }
    } else if (c == Control::Domestic) {
      const auto pool = domestic_companies(country);
      a.push_back(make_assignee(pool[rng.below(pool.size())]));
    } else if (rng.chance(0.5)) {
      a.push_back({"", std::nullopt, OrgType::Individual});
    }
    return a;
  }
};

void emit_country(Emitter& em, const CountryPlan& plan, const std::vector<Draft>& drafts,
                  const std::vector<std::string>* fixed_names, bool distinct_partners) {
  auto factory = names_for(plan.country);
  std::size_t partner_cursor = em.rng.below(em.partner_pool.size());
  std::size_t name_cursor = 0;
  for (const auto& d : drafts) {
    PatentRecord r;
    r.id = em.id();
    r.grant_date = issue_date(2007, em.rng.below(52));
    for (int k = 0; k < d.listings; ++k) {
      const auto& token = k < static_cast<int>(d.cities.size()) ? d.cities[k] : d.cities[em.rng.below(d.cities.size())];
      auto a = address_for(token, plan.country, em.rng);
      a.name = fixed_names ? (*fixed_names)[name_cursor++] : factory.next();
      r.inventors.push_back(std::move(a));
    }
    if (d.international) {
      const auto place = distinct_partners ? em.partner_pool[partner_cursor++ % em.partner_pool.size()]
                                           : em.partner_pool[em.rng.below(em.partner_pool.size())];
      const int n = em.rng.chance(0.7) ? 1 : 2;
      for (int k = 0; k < n; ++k) r.inventors.push_back(em.partner_inventor(place));
    }
    // Move a partner to the front now and then, as on real front pages.
    if (d.international && em.rng.chance(0.3)) std::rotate(r.inventors.begin(), r.inventors.end() - 1, r.inventors.end());
    r.assignees = em.assignees(d.control, plan.country);
    r.cited_by_count = d.high ? high_citations(em.rng) : low_citations(em.rng);
    em.out.push_back(std::move(r));
  }
}

CountryPlan hungary() {
  CountryPlan p;
  p.country = "HU";
  p.foreign = {22, 16, 101};
  p.domestic = {5, 23, 56};
  p.unknown = {2, 4, 9};
  p.prescribed = {
      {{"Budapest", "Gödöllő"}, true},     {{"Budapest", "Budaörs"}, true},   {{"Budapest", "Törökbálint"}, false},
      {{"Budapest", "Vác"}, false},        {{"Budapest", "Érd"}, false},      {{"Budapest", "Dunakeszi"}, false},
      {{"Budapest", "Szentendre"}, false}, {{"Szeged", "Debrecen"}, false},   {{"Budapest", "Gödöllő"}, false},
      {{"Budapest", "Budaörs"}, false},    {{"Budapest", "Törökbálint"}, false},
      {{"Budapest", "Székesfehérvár"}, false}, {{"Szeged", "Kecskemét"}, false},
  };
  p.anchors = {{"Budapest", 37}, {"Szeged", 7},         {"Debrecen", 6}, {"Szombathely", 4}, {"Vác", 3},
               {"Miskolc", 2},   {"Székesfehérvár", 2}, {"Gödöllő", 2},  {"Pécs", 2},        {"Győr", 2},
               {"Veszprém", 2},  {"Budaörs", 2},        {"Törökbálint", 2}};
  p.singles = {"Eger",        "Sopron",        "Nyíregyháza",   "Szolnok",          "Tatabánya",
               "Kaposvár",    "Zalaegerszeg",  "Esztergom",     "Gyömrő",           "Pilisvörösvár",
               "Biatorbágy",  "Budakeszi",     "Veresegyház",   "Fót",              "Gyál",
               "Vecsés",      "Őrbottyán",     "Solymár",       "Üröm",             "Pomáz",
               "Kistarcsa",   "Tahitótfalu",   "Szigetszentmiklós", "Százhalombatta", "Hatvan",
               "Paks",        "Mosonmagyaróvár", "Tiszaújváros", "Kazincbarcika",   "Pápa",
               "Keszthely",   "Dunaújváros",   "Hódmezővásárhely", "Békéscsaba",    "Kőszeg",
               "Mór",         "Bicske",        "Nagykovácsi",   "Telki",            "Diósd",
               "Halásztelek", "Sóskút",        "Páty",          "Zsámbék",          "Mogyoród",
               "Csömör",      "Pécel",         "Isaszeg",       "Üllő",             "Ócsa",
               "Leányfalu",   "Visegrád"};
  p.high_in = {{"Budapest", 2}, {"Szeged", 1}, {"Miskolc", 1}, {"Eger", 1}};
  return p;
}

CountryPlan czechia() {
  CountryPlan p;
  p.country = "CZ";
  p.foreign = {26, 10, 68};
  p.domestic = {4, 9, 22};
  p.unknown = {2, 6, 12};
  p.anchors = {{"Prague", 17},  {"Brno", 8},        {"Ostrava", 4}, {"Plzeň", 4},   {"Olomouc", 4},
               {"Liberec", 4},  {"Hradec Králové", 4}, {"Pardubice", 4}, {"Mladá Boleslav", 4}, {"Roztoky", 4},
               {"Zlín", 4},     {"Kladno", 4},      {"Jihlava", 4}, {"Ústí nad Labem", 4}, {"Říčany", 3},
               {"Černošice", 3}};
  p.singles = {"Holice",  "~Dolní Břežany", "~Řevnice", "Beroun",  "Kolín",
               "Mělník",  "Rožnov pod Radhoštěm", "Vsetín", "Třinec", "Kopřivnice", "Uherské Hradiště",
               "Prostějov", "Šumperk", "Trutnov", "Chrudim", "Blansko", "Kuřim", "Třebíč", "Tábor",
               "Jablonec nad Nisou"};
  p.high_in = {{"Ostrava", 1}, {"Plzeň", 1}};
  return p;
}

CountryPlan poland() {
  CountryPlan p;
  p.country = "PL";
  p.foreign = {33, 9, 53};
  p.domestic = {6, 18, 29};
  p.unknown = {4, 7, 14};
  p.anchors = {{"Warsaw", 21}, {"Wrocław", 7}, {"Kraków", 4},  {"Gliwice", 4}, {"Poznań", 4},
               {"Gdańsk", 4},  {"Katowice", 4}, {"Łódź", 4},   {"Piaseczno", 4}, {"Puławy", 4},
               {"Pruszków", 3}, {"Legionowo", 2}};
  p.singles = {"~Stare Babice", "Józefów", "Łomianki", "Otwock", "Ząbki", "Marki",
               "Konstancin-Jeziorna", "Świdnik", "Mielec", "Wieliczka", "Skawina", "Niepołomice", "Oława",
               "Oleśnica", "Sopot", "Pruszcz Gdański", "Luboń", "Swarzędz", "Pszczyna", "Łańcut", "Kórnik",
               "Grodzisk Mazowiecki", "Police", "Zakopane", "Dębica"};
  p.high_in = {{"Warsaw", 3}, {"Wrocław", 1}, {"Gliwice", 1}};
  p.extra_listing_cap = 2;
  return p;
}

CountryPlan slovakia() {
  CountryPlan p;
  p.country = "SK";
  // One listing per patent; person counts come from repeated names.
  p.foreign = {4, 2, 6};
  p.domestic = {2, 3, 5};
  p.unknown = {2, 2, 4};
  p.anchors = {{"Bratislava", 7}, {"Košice", 2}};
  p.singles = {"Piešťany", "Senec", "Pezinok", "Nová Dubnica", "Svit", "Stupava"};
  p.high_in = {{"Košice", 1}};
  p.extra_listing_cap = 0;
  return p;
}

// Five distinct foreign-class names over six patents, four over five
// domestic-class patents, four unknown-class names.
std::vector<std::string> slovak_names(const std::vector<Draft>& drafts) {
  auto factory = names_for("SK");
  std::map<Control, std::vector<std::string>> pools;
  pools[Control::Foreign] = {factory.next(), factory.next(), factory.next(), factory.next(), factory.next()};
  pools[Control::Domestic] = {factory.next(), factory.next(), factory.next(), factory.next()};
  pools[Control::Unknown] = {factory.next(), factory.next(), factory.next(), factory.next()};
  std::map<Control, std::size_t> used;
  std::vector<std::string> out;
  for (const auto& d : drafts) {
    const auto& pool = pools[d.control];
    out.push_back(pool[used[d.control]++ % pool.size()]);
  }
  return out;
}

struct WeightedCity {
  const char* name;
  double weight;
  double quality;  // relative odds of a highly cited patent
};

const std::vector<WeightedCity>& german_cities() {
  static const std::vector<WeightedCity> w = {
      {"Munich", 1400, 1.3},          {"Stuttgart", 700, 1.1},      {"Erlangen", 450, 2.2},
      {"Nuremberg", 350, 1.0},        {"Hamburg", 350, 1.0},        {"Frankfurt am Main", 300, 1.0},
      {"Ludwigshafen am Rhein", 300, 0.35}, {"Cologne", 250, 1.0},  {"Darmstadt", 250, 1.3},
      {"Karlsruhe", 250, 1.1},        {"Leverkusen", 200, 0.8},     {"Düsseldorf", 200, 1.0},
      {"Aachen", 200, 1.2},           {"Mannheim", 200, 1.0},       {"Heidelberg", 150, 1.3},
      {"Gerlingen", 150, 1.0},        {"Regensburg", 150, 0.9},     {"Ingolstadt", 150, 0.8},
      {"Augsburg", 150, 0.9},         {"Wolfsburg", 150, 0.4},      {"Hanover", 150, 1.0},
      {"Walldorf", 120, 2.0},         {"Böblingen", 120, 1.2},      {"Braunschweig", 120, 1.0},
      {"Essen", 120, 0.9},            {"Freiburg im Breisgau", 120, 1.1}, {"Ulm", 120, 1.0},
      {"Sindelfingen", 100, 0.8},     {"Mainz", 100, 1.0},          {"Leinfelden-Echterdingen", 80, 1.0},
      {"Wiesbaden", 80, 1.0},         {"Bremen", 80, 1.0},          {"Dortmund", 80, 0.9},
      {"Bonn", 70, 1.0},              {"Bochum", 60, 1.0},          {"Wuppertal", 60, 1.0},
      {"Bielefeld", 60, 1.0},         {"Göttingen", 60, 1.2},       {"Tübingen", 60, 1.3},
      {"Duisburg", 50, 0.9},          {"Münster", 50, 1.0},         {"Würzburg", 50, 1.0},
      {"Kiel", 40, 1.0},              {"Krefeld", 40, 0.9},         {"Lübeck", 40, 1.0},
      {"Saarbrücken", 40, 1.0},       {"Kaiserslautern", 40, 1.0},  {"Konstanz", 30, 1.0},
      {"Halle (Westf.)", 10, 1.0},
      {"Berlin", 420, 1.0},           {"Dresden", 260, 1.2},        {"Jena", 110, 1.4},
      {"Leipzig", 60, 1.0},           {"Potsdam", 30, 1.0},         {"Chemnitz", 30, 1.0},
      {"Halle (Saale)", 25, 1.0},     {"Magdeburg", 25, 1.0},       {"Erfurt", 20, 1.0},
      {"Rostock", 20, 1.0},           {"Ilmenau", 15, 1.0},         {"Freiberg", 15, 1.0},
      {"Teltow", 15, 1.0},            {"Zwickau", 10, 1.0},         {"Cottbus", 8, 1.0},
      {"Gera", 8, 1.0},               {"Greifswald", 8, 1.0},       {"Weimar", 8, 1.0},
      {"Schwerin", 6, 1.0},           {"Frankfurt (Oder)", 6, 1.0},
  };
  return w;
}

std::size_t weighted_pick(const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.unit() * cumulative.back();
  return static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
}

void emit_germany(Emitter& em, std::size_t highs) {
  struct Slot {
    Control control;
    bool international;
    int listings;
  };
  std::vector<Slot> slots;
  auto add = [&](Control c, int intl, int dom, int listings) {
    const std::size_t first = slots.size();
    for (int i = 0; i < intl; ++i) slots.push_back({c, true, 1});
    for (int i = 0; i < dom; ++i) slots.push_back({c, false, 1});
    int extra = listings - intl - dom;
    while (extra > 0) {
      auto& s = slots[first + em.rng.below(static_cast<std::size_t>(intl + dom))];
      if (s.listings >= 4) continue;
      ++s.listings;
      --extra;
    }
  };
  add(Control::Foreign, 700, 1100, 3001);
  add(Control::Domestic, 1100, 7768, 14792);
  add(Control::Unknown, 65, 235, 425);
  em.rng.shuffle(slots);

  const auto& cities = german_cities();
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : cities) cumulative.push_back(acc += c.weight);

  const std::size_t first = em.out.size();
  std::vector<double> keys;
  auto factory = names_for("DE");
  for (const auto& s : slots) {
    PatentRecord r;
    r.id = em.id();
    r.grant_date = issue_date(2007, em.rng.below(52));
    std::vector<std::size_t> picked;
    for (int k = 0; k < s.listings; ++k) {
      std::size_t c = picked.empty() || em.rng.chance(0.35) ? weighted_pick(cumulative, em.rng)
                                                          : picked[em.rng.below(picked.size())];
      picked.push_back(c);
      PartyAddress a = address_for(cities[c].name, "DE", em.rng);
      a.name = factory.next();
      r.inventors.push_back(std::move(a));
    }
    if (s.international) {
      const auto place = em.partner_pool[em.rng.below(em.partner_pool.size())];
      const int n = em.rng.chance(0.75) ? 1 : 2;
      for (int k = 0; k < n; ++k) r.inventors.push_back(em.partner_inventor(place));
    }
    r.assignees = em.assignees(s.control, "DE");
    r.cited_by_count = low_citations(em.rng);
    // Weighted sampling without replacement: key = u^(1/w).
    keys.push_back(std::pow(std::max(em.rng.unit(), 1e-300), 1.0 / cities[picked.front()].quality));
    em.out.push_back(std::move(r));
  }
  std::vector<std::size_t> order(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return keys[a] != keys[b] ? keys[a] > keys[b] : a < b;
  });
  for (std::size_t i = 0; i < highs; ++i) em.out[first + order[i]].cited_by_count = high_citations(em.rng);
}

// ---- timeline ----------------------------------------------------------------

struct TableRow {
  const char* country;
  double values[6];
};

constexpr TableRow kWindowTargets[] = {
    {"CZ", {48.69, 24.496, 22.682, 38.122, 61.758, 60.93}},
    {"HU", {143.304, 82.222, 45.724, 61.886, 88.218, 51.225}},
    {"PL", {18.082, 11.422, 16.716, 29.512, 59.228, 40.325}},
    {"SK", {0, 0, 1.574, 7.078, 11.826, 16.39}},
};

struct Share {
  int home;
  int total;
};

// Best one- or two-fraction representation of r in [0, 1) with inventor
// teams of at most 8.
std::vector<Share> fraction_terms(double r) {
  std::vector<Share> best;
  double err = r;
  for (int k1 = 2; k1 <= 8; ++k1) {
    for (int j1 = 1; j1 < k1; ++j1) {
      const double a = static_cast<double>(j1) / k1;
      if (std::abs(r - a) < err - 1e-12) {
        err = std::abs(r - a);
        best = {{j1, k1}};
      }
      for (int k2 = 2; k2 <= 8; ++k2) {
        for (int j2 = 1; j2 < k2; ++j2) {
          const double b = static_cast<double>(j2) / k2;
          if (std::abs(r - a - b) < err - 1e-12) {
            err = std::abs(r - a - b);
            best = {{j1, k1}, {j2, k2}};
          }
        }
      }
    }
  }
  return best;
}

double timeline_weight(std::string_view country, std::string_view city, int year) {
  const bool socialist = year <= 1990;
  if (country == "CZ") {
    if (city == "Prague") return 30;
    if (city == "Brno") return socialist ? 20 : 8 + (year > 2000 ? 4 : 0);
    if (city == "Ostrava") return socialist ? 10 : (year > 2000 ? 6 : 3);
    if (city == "Plzeň" || city == "Pardubice") return 4;
    if (city == "Olomouc" || city == "Hradec Králové" || city == "Liberec" || city == "Zlín") return 3;
  } else if (country == "HU") {
    if (city == "Budapest") return 45;
    if (city == "Miskolc") return socialist ? 8 : 2;
    if (city == "Debrecen") return year > 2000 ? 7 : 3;
    if (city == "Szeged") return 6;
    if (city == "Veszprém" || city == "Pécs" || city == "Győr" || city == "Székesfehérvár" || city == "Gödöllő") {
      return 3;
    }
  } else if (country == "PL") {
    if (city == "Warsaw") return 30;
    if (city == "Katowice") return socialist ? 10 : 2;
    if (city == "Kraków") return 8;
    if (city == "Wrocław") return 6;
    if (city == "Gdańsk") return year > 2000 ? 6 : 3;
    if (city == "Rzeszów") return year > 2000 ? 5 : 1;
    if (city == "Poznań" || city == "Łódź" || city == "Gliwice") return 3;
  } else if (country == "SK") {
    if (city == "Bratislava") return 30;
    if (city == "Košice") return 6;
  }
  return 0.6;
}

double foreign_share(std::string_view country, int year) {
  const double t = (year - 1981) / 29.0;
  if (country == "HU") return 0.10 + 0.55 * t;
  if (country == "CZ") return 0.05 + 0.55 * t;
  if (country == "PL") return 0.05 + 0.45 * t;
  return 0.20 + 0.35 * t;
}

}  // namespace

std::vector<GazetteerEntry> gazetteer_entries() {
  std::vector<GazetteerEntry> out;
  for (const auto& p : kPlaces) {
    GazetteerEntry e;
    e.name = p.name;
    e.ascii_name = normalize_name(p.name);
    e.alternates = alternates_of(p);
    e.country = p.country;
    if (*p.admin1) e.admin1 = p.admin1;
    e.lat = p.lat;
    e.lon = p.lon;
    e.population = p.population;
    out.push_back(std::move(e));
  }
  return out;
}

std::string gazetteer_csv() {
  std::string out = "name,ascii_name,alternates,country,admin1,lat,lon,population\n";
  for (const auto& e : gazetteer_entries()) {
    std::string alts;
    for (const auto& a : e.alternates) alts += (alts.empty() ? "" : ";") + a;
    out += csv::join_row({e.name, e.ascii_name, alts, e.country, e.admin1.value_or(""), csv::fixed(e.lat, 4),
                          csv::fixed(e.lon, 4), std::to_string(e.population)});
  }
  return out;
}

std::vector<PatentRecord> reconstruction_corpus() {
  Emitter em;
  constexpr std::size_t kTotal2007 = 10968 + 221;
  const auto total_highs = static_cast<std::size_t>(std::llround(0.10 * kTotal2007));
  std::size_t cee_highs = 0;
  for (const auto& plan : {czechia(), hungary(), poland(), slovakia()}) {
    const auto drafts = draft_country(plan, em.rng);
    for (const auto& d : drafts) cee_highs += d.high;
    if (plan.country == "SK") {
      const auto names = slovak_names(drafts);
      emit_country(em, plan, drafts, &names, false);
    } else {
      emit_country(em, plan, drafts, nullptr, plan.country == "HU");
    }
  }
  emit_germany(em, total_highs - cee_highs);

  // Grants just outside the year; only a date filter keeps them out.
  auto factory = names_for("HU");
  const std::pair<Date, const char*> boundary[] = {
      {{2006, 12, 26}, "Budapest"}, {{2008, 1, 1}, "Szeged"}, {{2006, 12, 26}, "Debrecen"}};
  for (const auto& [date, city] : boundary) {
    PatentRecord r;
    r.id = std::to_string(7150000 + em.out.size());
    r.grant_date = date;
    auto a = address_for(city, "HU", em.rng);
    a.name = factory.next() + " Jr.";
    r.inventors.push_back(std::move(a));
    r.assignees.push_back(make_assignee(domestic_companies("HU").front()));
    r.cited_by_count = 3;
    em.out.push_back(std::move(r));
  }
  std::sort(em.out.begin(), em.out.end(), [](const PatentRecord& a, const PatentRecord& b) {
    return std::tie(a.grant_date, a.id) < std::tie(b.grant_date, b.id);
  });
  return em.out;
}

std::vector<PatentRecord> timeline_corpus() {
  Rng rng(19811985);
  std::vector<PatentRecord> out;
  const auto partners = partner_places();
  std::map<int, std::size_t> per_year;
  auto next_id = [&](int year) { return std::to_string(4000000 + (year - 1981) * 100000 + per_year[year]++); };

  for (const auto& row : kWindowTargets) {
    const std::string country = row.country;
    const auto places = atlas().in_country(country);
    const auto domestic = domestic_companies(country);
    // Per-year list of patent home shares (1.0 = whole patent).
    std::map<int, std::vector<Share>> plan;
    for (int w = 0; w < 6; ++w) {
      const int first = 1981 + 5 * w;
      const int years = w == 5 ? 2 : 5;
      const double total = row.values[w] * years;
      if (total == 0.0) continue;
      // About one patent in twelve is a co-invention shared with a foreign team.
      const long halves = std::lround(total / 12.0 * 2.0) / 2 * 2;
      long whole = static_cast<long>(std::floor(total)) - halves / 2;
      const auto terms = fraction_terms(total - std::floor(total));
      std::vector<Share> shares(static_cast<std::size_t>(whole), Share{1, 1});
      for (long h = 0; h < halves; ++h) shares.push_back({1, 2});
      for (const auto& t : terms) shares.push_back(t);
      rng.shuffle(shares);
      for (std::size_t i = 0; i < shares.size(); ++i) plan[first + static_cast<int>(i % years)].push_back(shares[i]);
    }
    // 2008-2010 continue at the 2006-2007 rate, whole patents only.
    for (int y = 2008; y <= 2010; ++y) {
      const long n = std::lround(row.values[5]);
      for (long i = 0; i < n; ++i) plan[y].push_back({1, 1});
    }

    for (auto& [year, shares] : plan) {
      std::vector<double> cumulative;
      double acc = 0.0;
      for (auto i : places) cumulative.push_back(acc += timeline_weight(country, atlas().place(i).name, year));
      const auto foreign = static_cast<std::size_t>(std::lround(foreign_share(country, year) * shares.size()));
      std::vector<char> is_foreign(shares.size(), 0);
      for (std::size_t i = 0; i < foreign; ++i) is_foreign[i] = 1;
      rng.shuffle(is_foreign);
      for (std::size_t i = 0; i < shares.size(); ++i) {
        const auto& s = shares[i];
        PatentRecord r;
        r.id = next_id(year);
        r.grant_date = issue_date(year, rng.below(52));
        // Whole patents get one to three home inventors.
        const int home = s.total == 1 ? 1 + static_cast<int>(rng.below(3) == 0) : s.home;
        std::size_t city = places[weighted_pick(cumulative, rng)];
        for (int k = 0; k < home; ++k) {
          if (k > 0 && rng.chance(0.3)) city = places[weighted_pick(cumulative, rng)];
          const auto sp = atlas().spell(city, rng);
          r.inventors.push_back({sp.city, sp.admin1, country, std::nullopt});
        }
        const auto partner = partners[rng.below(partners.size())];
        for (int k = s.home; k < s.total; ++k) {
          const auto sp = atlas().spell(partner, rng);
          r.inventors.push_back({sp.city, sp.admin1, atlas().place(partner).country, std::nullopt});
        }
        if (is_foreign[i]) {
          for (;;) {
            const auto& co = kForeignCompanies[rng.below(std::size(kForeignCompanies))];
            if (co.country != country) {
              r.assignees.push_back(make_assignee(co));
              break;
            }
          }
        } else if (!rng.chance(0.1)) {
          r.assignees.push_back(make_assignee(domestic[rng.below(domestic.size())]));
        }
        r.cited_by_count = low_citations(rng) + (rng.chance(0.1) ? 15 : 0);
        out.push_back(std::move(r));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PatentRecord& a, const PatentRecord& b) {
    return std::tie(a.grant_date, a.id) < std::tie(b.grant_date, b.id);
  });
  return out;
}

std::vector<PatentRecord> synthetic_corpus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> places;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (std::size_t i = 0; i < std::size(kPlaces); ++i) {
    places.push_back(i);
    const std::string_view c = kPlaces[i].country;
    const double w = std::sqrt(static_cast<double>(kPlaces[i].population)) * (c == "DE" ? 3.0 : 1.0);
    cumulative.push_back(acc += w);
  }
  std::vector<PatentRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PatentRecord r;
    r.id = "S" + std::to_string(1000000 + i);
    r.grant_date = issue_date(2007, rng.below(52));
    const int k = 1 + static_cast<int>(rng.below(4));
    for (int j = 0; j < k; ++j) {
      const auto p = places[weighted_pick(cumulative, rng)];
      const auto sp = atlas().spell(p, rng);
      r.inventors.push_back({sp.city, sp.admin1, kPlaces[p].country, std::nullopt});
    }
    const auto& co = kForeignCompanies[rng.below(std::size(kForeignCompanies))];
    if (!rng.chance(0.1)) r.assignees.push_back(make_assignee(co));
    r.cited_by_count = static_cast<long>(std::floor(40.0 * std::pow(rng.unit(), 3.0)));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace patlas::fixtures
