#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lineage {

constexpr std::int64_t kSecondsPerDay = 86400;

// Unix seconds from an ISO-8601 timestamp. Accepts "YYYY-MM-DD" and
// "YYYY-MM-DD[T ]HH:MM:SS" with an optional fractional part (ignored) and an
// optional "Z" / "+HH:MM" / "-HHMM" offset. Throws std::runtime_error on
// malformed input.
std::int64_t parse_iso8601(std::string_view s);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601(std::int64_t unix_seconds);

std::string to_lower(std::string_view s);

// Matching normalization used for project/repo names and copyright lines:
// ASCII letters lowercased, ASCII spaces and punctuation dropped. Bytes
// >= 0x80 pass through unchanged (ASCII-only folding, by documented
// limitation).
std::string normalize_name(std::string_view s);

// Trims and collapses internal whitespace runs to a single space.
std::string collapse_whitespace(std::string_view s);

bool contains_icase(std::string_view haystack, std::string_view needle);

// True when `needle` occurs in `text` delimited by non-identifier chars
// ([A-Za-z0-9_$] counts as identifier).
bool contains_word(std::string_view text, std::string_view needle, bool icase = false);

std::vector<std::string> split_lines(std::string_view text);

std::string read_file(const std::filesystem::path& p);          // throws
void write_file(const std::filesystem::path& p, std::string_view contents);

// CSV field escaping per RFC 4180: quoted when the value contains a comma,
// quote or newline.
std::string csv_escape(std::string_view field);

// Fixed-precision decimal formatting, used everywhere a score lands in an
// artifact so that output bytes do not depend on locale or float-to-shortest
// rules.
std::string format_score(double value);

} // namespace lineage
