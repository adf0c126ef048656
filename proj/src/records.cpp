#include "patlas/records.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "patlas/error.hpp"
#include "patlas/text.hpp"

namespace patlas {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 249> kIsoCountries = {
    "AD", "AE", "AF", "AG", "AI", "AL", "AM", "AO", "AQ", "AR", "AS", "AT", "AU", "AW", "AX",
    "AZ", "BA", "BB", "BD", "BE", "BF", "BG", "BH", "BI", "BJ", "BL", "BM", "BN", "BO", "BQ",
    "BR", "BS", "BT", "BV", "BW", "BY", "BZ", "CA", "CC", "CD", "CF", "CG", "CH", "CI", "CK",
    "CL", "CM", "CN", "CO", "CR", "CU", "CV", "CW", "CX", "CY", "CZ", "DE", "DJ", "DK", "DM",
    "DO", "DZ", "EC", "EE", "EG", "EH", "ER", "ES", "ET", "FI", "FJ", "FK", "FM", "FO", "FR",
    "GA", "GB", "GD", "GE", "GF", "GG", "GH", "GI", "GL", "GM", "GN", "GP", "GQ", "GR", "GS",
    "GT", "GU", "GW", "GY", "HK", "HM", "HN", "HR", "HT", "HU", "ID", "IE", "IL", "IM", "IN",
    "IO", "IQ", "IR", "IS", "IT", "JE", "JM", "JO", "JP", "KE", "KG", "KH", "KI", "KM", "KN",
    "KP", "KR", "KW", "KY", "KZ", "LA", "LB", "LC", "LI", "LK", "LR", "LS", "LT", "LU", "LV",
    "LY", "MA", "MC", "MD", "ME", "MF", "MG", "MH", "MK", "ML", "MM", "MN", "MO", "MP", "MQ",
    "MR", "MS", "MT", "MU", "MV", "MW", "MX", "MY", "MZ", "NA", "NC", "NE", "NF", "NG", "NI",
    "NL", "NO", "NP", "NR", "NU", "NZ", "OM", "PA", "PE", "PF", "PG", "PH", "PK", "PL", "PM",
    "PN", "PR", "PS", "PT", "PW", "PY", "QA", "RE", "RO", "RS", "RU", "RW", "SA", "SB", "SC",
    "SD", "SE", "SG", "SH", "SI", "SJ", "SK", "SL", "SM", "SN", "SO", "SR", "SS", "ST", "SV",
    "SX", "SY", "SZ", "TC", "TD", "TF", "TG", "TH", "TJ", "TK", "TL", "TM", "TN", "TO", "TR",
    "TT", "TV", "TW", "TZ", "UA", "UG", "UM", "US", "UY", "UZ", "VA", "VC", "VE", "VG", "VI",
    "VN", "VU", "WF", "WS", "YE", "YT", "ZA", "ZM", "ZW"};

bool is_alpha2(std::string_view code) {
  return code.size() == 2 && std::isupper(static_cast<unsigned char>(code[0])) &&
         std::isupper(static_cast<unsigned char>(code[1]));
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) throw ParseError(line, std::string("missing ") + key);
  if (!it->is_string()) throw ParseError(line, std::string(key) + " is not a string");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(line, std::string(key) + " is not a string");
  auto value = trim(it->get<std::string>());
  if (value.empty()) return std::nullopt;
  return value;
}

std::string parse_country(std::string raw, std::size_t line) {
  auto code = to_upper_ascii(trim(raw));
  if (!is_alpha2(code)) throw ParseError(line, "bad country code '" + raw + "'");
  return code;
}

PartyAddress parse_address(const json& obj, std::size_t line) {
  if (!obj.is_object()) throw ParseError(line, "inventor entry is not an object");
  PartyAddress a;
  a.city = trim(require_string(obj, "city", line));
  if (a.city.empty()) throw ParseError(line, "empty inventor city");
  a.admin1 = optional_string(obj, "admin1", line);
  if (a.admin1) *a.admin1 = to_upper_ascii(*a.admin1);
  a.country = parse_country(require_string(obj, "country", line), line);
  a.name = optional_string(obj, "name", line);
  return a;
}

Assignee parse_assignee(const json& obj, std::size_t line) {
  if (!obj.is_object()) throw ParseError(line, "assignee entry is not an object");
  Assignee a;
  a.name = trim(require_string(obj, "name", line));
  if (auto c = optional_string(obj, "country", line)) a.country = parse_country(*c, line);
  if (auto t = optional_string(obj, "org_type", line)) {
    const auto parsed = parse_org_type(*t);
    if (!parsed) throw ParseError(line, "unknown org_type '" + *t + "'");
    a.org_type = *parsed;
  }
  return a;
}

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const bool blank = std::all_of(line.begin(), line.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
    if (!blank) lines.push_back({line, number});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

void check_unique_ids(const std::vector<PatentRecord>& records) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(records.size());
  for (const auto& r : records) {
    if (!seen.insert(r.id).second) throw DuplicateIdError(r.id);
  }
}

ordered_json address_json(const PartyAddress& a) {
  ordered_json j;
  if (a.name) j["name"] = *a.name;
  j["city"] = a.city;
  if (a.admin1) j["admin1"] = *a.admin1;
  j["country"] = a.country;
  return j;
}

}  // namespace

// --- Date ------------------------------------------------------------------

std::optional<Date> Date::parse_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto field = [&](std::size_t off, std::size_t len, int& out) {
    const auto* first = text.data() + off;
    const auto* last = first + len;
    if (!std::all_of(first, last, [](char c) { return c >= '0' && c <= '9'; })) return false;
    return std::from_chars(first, last, out).ec == std::errc{};
  };
  Date d;
  if (!field(0, 4, d.year) || !field(5, 2, d.month) || !field(8, 2, d.day)) return std::nullopt;
  if (!d.valid()) return std::nullopt;
  return d;
}

bool Date::valid() const {
  if (year < 1 || year > 9999 || month < 1 || month > 12 || day < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  const int limit = (month == 2 && leap) ? 29 : kDays[month - 1];
  return day <= limit;
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

// --- enums -----------------------------------------------------------------

std::string_view to_string(OrgType t) {
  switch (t) {
    case OrgType::SME: return "SME";
    case OrgType::BigDomestic: return "BigDomestic";
    case OrgType::MNE: return "MNE";
    case OrgType::Individual: return "Individual";
    case OrgType::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<OrgType> parse_org_type(std::string_view text) {
  for (auto t : {OrgType::SME, OrgType::BigDomestic, OrgType::MNE, OrgType::Individual,
                 OrgType::Unknown}) {
    if (text == to_string(t)) return t;
  }
  return std::nullopt;
}

bool PatentRecord::has_inventor_in(std::string_view country) const {
  return std::any_of(inventors.begin(), inventors.end(),
                     [&](const PartyAddress& a) { return a.country == country; });
}

bool Query::matches(const PatentRecord& r) const {
  if (r.grant_date < date_from || date_to < r.grant_date) return false;
  return std::any_of(r.inventors.begin(), r.inventors.end(), [&](const PartyAddress& a) {
    return inventor_countries.count(a.country) != 0;
  });
}

// --- parsing ---------------------------------------------------------------

PatentRecord parse_record_line(std::string_view line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_no, "malformed JSON");
  }
  if (!obj.is_object()) throw ParseError(line_no, "record is not an object");

  PatentRecord r;
  r.id = trim(require_string(obj, "id", line_no));
  if (r.id.empty()) throw ParseError(line_no, "empty id");

  const auto date_text = require_string(obj, "grant_date", line_no);
  const auto date = Date::parse_iso(date_text);
  if (!date) throw ParseError(line_no, "bad grant_date '" + date_text + "'");
  r.grant_date = *date;

  const auto inv = obj.find("inventors");
  if (inv == obj.end() || inv->is_null() || (inv->is_array() && inv->empty())) {
    throw ParseError(line_no, "no inventors");
  }
  if (!inv->is_array()) throw ParseError(line_no, "inventors is not an array");
  r.inventors.reserve(inv->size());
  for (const auto& a : *inv) r.inventors.push_back(parse_address(a, line_no));

  if (const auto as = obj.find("assignees"); as != obj.end() && !as->is_null()) {
    if (!as->is_array()) throw ParseError(line_no, "assignees is not an array");
    r.assignees.reserve(as->size());
    for (const auto& a : *as) r.assignees.push_back(parse_assignee(a, line_no));
  }

  if (const auto c = obj.find("cited_by_count"); c != obj.end() && !c->is_null()) {
    if (!c->is_number_integer()) throw ParseError(line_no, "cited_by_count is not an integer");
    const auto value = c->get<long long>();
    if (value < 0) throw ParseError(line_no, "negative cited_by_count");
    r.cited_by_count = static_cast<long>(value);
  }
  return r;
}

std::vector<PatentRecord> parse_record_stream(std::string_view text) {
  const auto lines = split_lines(text);
  const auto n = static_cast<std::ptrdiff_t>(lines.size());
  std::vector<PatentRecord> records(lines.size());
  std::vector<std::optional<ParseError>> errors(lines.size());

#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      records[i] = parse_record_line(lines[i].text, lines[i].number);
    } catch (const ParseError& e) {
      errors[i] = e;
    }
  }
  for (const auto& e : errors) {
    if (e) throw *e;
  }
  check_unique_ids(records);
  return records;
}

namespace serial {
std::vector<PatentRecord> parse_record_stream(std::string_view text) {
  std::vector<PatentRecord> records;
  for (const auto& line : split_lines(text)) {
    records.push_back(parse_record_line(line.text, line.number));
  }
  check_unique_ids(records);
  return records;
}
}  // namespace serial

std::vector<PatentRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read corpus " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_record_stream(buf.str());
}

// --- serialization ---------------------------------------------------------

std::string serialize_record(const PatentRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["grant_date"] = r.grant_date.iso();
  auto inventors = ordered_json::array();
  for (const auto& a : r.inventors) inventors.push_back(address_json(a));
  j["inventors"] = std::move(inventors);
  auto assignees = ordered_json::array();
  for (const auto& a : r.assignees) {
    ordered_json e;
    e["name"] = a.name;
    if (a.country) e["country"] = *a.country;
    if (a.org_type != OrgType::Unknown) e["org_type"] = std::string(to_string(a.org_type));
    assignees.push_back(std::move(e));
  }
  j["assignees"] = std::move(assignees);
  j["cited_by_count"] = r.cited_by_count;
  return j.dump();
}

std::string serialize_corpus(std::span<const PatentRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += serialize_record(r);
    out += '\n';
  }
  return out;
}

std::vector<PatentRecord> filter_records(std::span<const PatentRecord> corpus, const Query& q) {
  std::vector<PatentRecord> kept;
  for (const auto& r : corpus) {
    if (q.matches(r)) kept.push_back(r);
  }
  return kept;
}

bool is_known_country(std::string_view code) {
  return std::binary_search(kIsoCountries.begin(), kIsoCountries.end(), code);
}

std::vector<CountryIssue> unknown_country_codes(std::span<const PatentRecord> records) {
  std::vector<CountryIssue> issues;
  for (const auto& r : records) {
    std::set<std::string> flagged;
    for (const auto& a : r.inventors) {
      if (!is_known_country(a.country)) flagged.insert(a.country);
    }
    for (const auto& a : r.assignees) {
      if (a.country && !is_known_country(*a.country)) flagged.insert(*a.country);
    }
    for (const auto& code : flagged) issues.push_back({r.id, code});
  }
  return issues;
}

}  // namespace patlas
