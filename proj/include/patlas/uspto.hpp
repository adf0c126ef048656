#pragma once

#include <optional>
#include <string_view>

#include "patlas/records.hpp"

namespace patlas {

// Extracts a record from a saved USPTO granted-patent full-text page
// (patft HTML). Addresses follow the page conventions: a bold two-letter
// code after the city is a country, a plain one is a US state.
// `cited_by` comes from a sidecar file; absent means 0.
PatentRecord parse_uspto_fulltext(std::string_view page, std::optional<long> cited_by = {});

}  // namespace patlas
