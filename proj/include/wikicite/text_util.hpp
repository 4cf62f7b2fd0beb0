#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wikicite {

// Shortest decimal representation that round-trips the double.
std::string format_double(double v);

// Fixed two-decimal rendering used by score and matrix outputs.
std::string format_fixed2(double v);

double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);

std::vector<std::string_view> split_tabs(std::string_view line);

std::string_view trim(std::string_view s);

bool ascii_iequals(std::string_view a, std::string_view b);

// MediaWiki title normalization for index joins: percent-decode valid %XX
// sequences, underscore the spaces, uppercase the first ASCII letter.
// Titles whose first letter is non-ASCII are left as-is (full Unicode case
// mapping is out of scope; fixture titles stay ASCII-initial).
std::string normalize_title(std::string_view raw);

// Decodes %XX only when both hex digits are present; a bare '%' stays.
std::string percent_decode(std::string_view s);

// Template-name normalization: trim, collapse runs of spaces/underscores to
// one space, uppercase the first ASCII letter.
std::string normalize_template_name(std::string_view raw);

}  // namespace wikicite
