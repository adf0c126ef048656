#pragma once

#include <string>
#include <string_view>

namespace patlas {

// Folds a place name to its lookup form: lower-case ASCII with diacritics
// stripped, punctuation dropped and whitespace runs collapsed to one space.
// Idempotent.
std::string normalize_name(std::string_view raw);

std::string trim(std::string_view s);
std::string to_upper_ascii(std::string_view s);

// Decodes the HTML character references found in archived patent pages
// (&amp; &lt; &gt; &quot; &apos; &nbsp;, the Latin-1 named set and numeric
// forms) to UTF-8.
std::string decode_html_entities(std::string_view s);

// Appends the UTF-8 encoding of a code point.
void append_utf8(std::string& out, char32_t cp);

}  // namespace patlas
