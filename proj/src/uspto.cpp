#include "patlas/uspto.hpp"

#include <array>
#include <cctype>
#include <regex>
#include <string>

#include "patlas/error.hpp"
#include "patlas/text.hpp"

namespace patlas {
namespace {

constexpr auto kFlags = std::regex::icase | std::regex::ECMAScript;

std::string clean(std::string_view s) {
  std::string text = decode_html_entities(s);
  // Collapse whitespace left over from the page layout.
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::optional<std::string> find_patent_number(const std::string& page) {
  static const std::regex title(R"(United States Patent:\s*([A-Z]{0,2}[0-9,]+))", kFlags);
  static const std::regex header(R"(United States Patent\s*</B>\s*</TD>\s*<TD[^>]*>\s*<B>\s*(?:<I>)?\s*([A-Z]{0,2}[0-9,]+))",
                                 kFlags);
  std::smatch m;
  if (std::regex_search(page, m, title) || std::regex_search(page, m, header)) {
    std::string number;
    for (char c : m[1].str()) {
      if (c != ',') number.push_back(c);
    }
    return number;
  }
  return std::nullopt;
}

std::optional<Date> find_issue_date(const std::string& page) {
  static constexpr std::array<const char*, 12> kMonths = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  static const std::regex date(
      R"(\b(January|February|March|April|May|June|July|August|September|October|November|December)\s+([0-9]{1,2}),\s*([0-9]{4})\b)",
      kFlags);
  std::smatch m;
  if (!std::regex_search(page, m, date)) return std::nullopt;
  std::string month = m[1].str();
  for (auto& c : month) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  Date d;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (month == kMonths[i]) d.month = static_cast<int>(i) + 1;
  }
  d.day = std::stoi(m[2].str());
  d.year = std::stoi(m[3].str());
  if (!d.valid()) return std::nullopt;
  return d;
}

// Returns the inner HTML of the <TD> cell following the row header `label`.
std::optional<std::string> row_cell(const std::string& page, const std::string& label_pattern) {
  const std::regex row("<TH[^>]*>\\s*(?:" + label_pattern + ")\\s*</TH>\\s*<TD[^>]*>([\\s\\S]*?)</TD>",
                       kFlags);
  std::smatch m;
  if (!std::regex_search(page, m, row)) return std::nullopt;
  return m[1].str();
}

struct Location {
  std::string city;
  std::optional<std::string> admin1;
  std::optional<std::string> country;
};

// "Budapest, <B>HU</B>" -> country HU; "Austin, TX" -> US state TX.
std::optional<Location> parse_location(const std::string& inner) {
  static const std::regex bold_country(R"(^([\s\S]*),\s*<B>\s*([A-Za-z]{2})\s*</B>\s*$)", kFlags);
  static const std::regex us_state(R"(^([\s\S]*),\s*([A-Za-z]{2})\s*$)", kFlags);
  std::smatch m;
  Location loc;
  if (std::regex_match(inner, m, bold_country)) {
    loc.city = clean(m[1].str());
    loc.country = to_upper_ascii(m[2].str());
  } else if (std::regex_match(inner, m, us_state)) {
    loc.city = clean(m[1].str());
    loc.admin1 = to_upper_ascii(m[2].str());
    loc.country = "US";
  } else {
    return std::nullopt;
  }
  if (loc.city.empty()) return std::nullopt;
  return loc;
}

std::string party_name(const std::string& raw) {
  std::string name = clean(raw);
  for (auto& c : name) {
    if (c == ';') c = ',';
  }
  return name;
}

}  // namespace

PatentRecord parse_uspto_fulltext(std::string_view page_view, std::optional<long> cited_by) {
  const std::string page(page_view);
  const auto inventor_cell = row_cell(page, "Inventors?:");
  if (!inventor_cell) throw Error("unparsable: no inventor section");

  PatentRecord r;
  const auto number = find_patent_number(page);
  if (!number) throw Error("unparsable: no patent number");
  r.id = *number;
  const auto date = find_issue_date(page);
  if (!date) throw Error("unparsable: no issue date");
  r.grant_date = *date;

  static const std::regex entry(R"(<B>([^<]*)</B>\s*\(((?:[^()<]|<B>[^<]*</B>)*)\))", kFlags);
  for (std::sregex_iterator it(inventor_cell->begin(), inventor_cell->end(), entry), end;
       it != end; ++it) {
    const auto loc = parse_location((*it)[2].str());
    if (!loc) throw Error("unparsable: inventor address '" + clean((*it)[2].str()) + "'");
    PartyAddress a;
    a.name = party_name((*it)[1].str());
    a.city = loc->city;
    a.admin1 = loc->admin1;
    a.country = *loc->country;
    r.inventors.push_back(std::move(a));
  }
  if (r.inventors.empty()) throw Error("unparsable: no inventor section");

  if (const auto assignee_cell = row_cell(page, "Assignees?:")) {
    static const std::regex party(R"(<B>([^<]*)</B>\s*(?:\(((?:[^()<]|<B>[^<]*</B>)*)\))?)", kFlags);
    for (std::sregex_iterator it(assignee_cell->begin(), assignee_cell->end(), party), end;
         it != end; ++it) {
      Assignee a;
      a.name = clean((*it)[1].str());
      if ((*it)[2].matched) {
        if (const auto loc = parse_location((*it)[2].str())) a.country = loc->country;
      }
      if (!a.name.empty()) r.assignees.push_back(std::move(a));
    }
  }

  r.cited_by_count = cited_by.value_or(0);
  return r;
}

}  // namespace patlas
