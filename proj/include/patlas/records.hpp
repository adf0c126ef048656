#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace patlas {

// Proleptic Gregorian calendar date.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  // Strict "YYYY-MM-DD"; nullopt for anything else or an impossible date.
  static std::optional<Date> parse_iso(std::string_view text);

  bool valid() const;
  std::string iso() const;

  auto operator<=>(const Date&) const = default;
};

struct PartyAddress {
  std::string city;
  std::optional<std::string> admin1;
  std::string country;  // ISO-3166 alpha-2, upper case
  // Inventor name as transcribed on the patent; only used for person-level
  // counting in the control module.
  std::optional<std::string> name;

  bool operator==(const PartyAddress&) const = default;
};

enum class OrgType { SME, BigDomestic, MNE, Individual, Unknown };

std::string_view to_string(OrgType t);
std::optional<OrgType> parse_org_type(std::string_view text);

struct Assignee {
  std::string name;
  std::optional<std::string> country;
  OrgType org_type = OrgType::Unknown;

  bool operator==(const Assignee&) const = default;
};

struct PatentRecord {
  std::string id;
  Date grant_date;
  std::vector<PartyAddress> inventors;
  std::vector<Assignee> assignees;
  long cited_by_count = 0;

  bool has_inventor_in(std::string_view country) const;
  bool operator==(const PatentRecord&) const = default;
};

// Mirrors the USPTO advanced-search semantics "icn/XX and isd/..." : inventor
// country in a set, issue date in an inclusive range.
struct Query {
  std::set<std::string> inventor_countries;
  Date date_from;
  Date date_to;

  bool valid() const { return !inventor_countries.empty() && date_from <= date_to; }
  bool matches(const PatentRecord& r) const;
};

// Parses one corpus line. Throws ParseError naming `line_no`.
PatentRecord parse_record_line(std::string_view line, std::size_t line_no);

// Parses a whole corpus (one JSON object per line, blank lines skipped).
// Lines are parsed in parallel; the first failing line (lowest line number)
// is reported. Duplicate ids raise DuplicateIdError.
std::vector<PatentRecord> parse_record_stream(std::string_view text);

std::vector<PatentRecord> load_corpus(const std::filesystem::path& path);

std::string serialize_record(const PatentRecord& r);
std::string serialize_corpus(std::span<const PatentRecord> records);

// Order-preserving subsequence of the records matched by `q`.
std::vector<PatentRecord> filter_records(std::span<const PatentRecord> corpus, const Query& q);

bool is_known_country(std::string_view code);

struct CountryIssue {
  std::string record_id;
  std::string code;
};

// Country codes that are well-formed but not assigned ISO-3166 codes.
std::vector<CountryIssue> unknown_country_codes(std::span<const PatentRecord> records);

namespace serial {
std::vector<PatentRecord> parse_record_stream(std::string_view text);
}  // namespace serial

}  // namespace patlas
