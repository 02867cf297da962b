#include "lineage/util.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lineage {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

int parse_digits(std::string_view s, std::size_t pos, std::size_t n) {
    if (pos + n > s.size())
        throw std::runtime_error("bad timestamp: " + std::string(s));
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::runtime_error("bad timestamp: " + std::string(s));
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

} // namespace

std::int64_t parse_iso8601(std::string_view s) {
    if (s.size() < 10 || s[4] != '-' || s[7] != '-')
        throw std::runtime_error("bad timestamp: " + std::string(s));
    const int year = parse_digits(s, 0, 4);
    const int month = parse_digits(s, 5, 2);
    const int day = parse_digits(s, 8, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31)
        throw std::runtime_error("bad timestamp: " + std::string(s));

    std::int64_t secs = days_from_civil(year, month, day) * kSecondsPerDay;
    std::size_t pos = 10;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
        const int hh = parse_digits(s, pos + 1, 2);
        if (pos + 3 >= s.size() || s[pos + 3] != ':')
            throw std::runtime_error("bad timestamp: " + std::string(s));
        const int mm = parse_digits(s, pos + 4, 2);
        int ss = 0;
        pos += 6;
        if (pos < s.size() && s[pos] == ':') {
            ss = parse_digits(s, pos + 1, 2);
            pos += 3;
        }
        if (hh > 23 || mm > 59 || ss > 60)
            throw std::runtime_error("bad timestamp: " + std::string(s));
        secs += hh * 3600 + mm * 60 + ss;
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
        }
    }
    if (pos < s.size()) {
        const char c = s[pos];
        if (c == 'Z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            const int oh = parse_digits(s, pos + 1, 2);
            pos += 3;
            int om = 0;
            if (pos < s.size() && s[pos] == ':') {
                om = parse_digits(s, pos + 1, 2);
                pos += 3;
            } else if (pos + 2 <= s.size()) {
                om = parse_digits(s, pos, 2);
                pos += 2;
            }
            const std::int64_t off = oh * 3600 + om * 60;
            secs += (c == '+') ? -off : off;
        }
    }
    if (pos != s.size())
        throw std::runtime_error("bad timestamp: " + std::string(s));
    return secs;
}

std::string format_iso8601(std::int64_t t) {
    std::int64_t days = t / kSecondsPerDay;
    std::int64_t rem = t % kSecondsPerDay;
    if (rem < 0) {
        rem += kSecondsPerDay;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

std::string normalize_name(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        const auto uc = static_cast<unsigned char>(c);
        if (uc >= 0x80) {
            out.push_back(c);
        } else if (std::isalnum(uc)) {
            out.push_back(static_cast<char>(std::tolower(uc)));
        }
    }
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool in_ws = true; // leading whitespace dropped
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty())
                out.push_back(' ');
            in_ws = false;
            out.push_back(c);
        }
    }
    return out;
}

bool contains_icase(std::string_view haystack, std::string_view needle) {
    if (needle.empty())
        return true;
    return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

namespace {
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
} // namespace

bool contains_word(std::string_view text, std::string_view needle, bool icase) {
    std::string t = icase ? to_lower(text) : std::string(text);
    std::string n = icase ? to_lower(needle) : std::string(needle);
    std::size_t pos = 0;
    while ((pos = t.find(n, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || !ident_char(t[pos - 1]);
        const std::size_t end = pos + n.size();
        const bool right_ok = end == t.size() || !ident_char(t[end]);
        if (left_ok && right_ok)
            return true;
        ++pos;
    }
    return false;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line = (nl == std::string_view::npos)
                                    ? text.substr(start)
                                    : text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (nl == std::string_view::npos) {
            if (!line.empty())
                lines.emplace_back(line); // no trailing empty line
            break;
        }
        lines.emplace_back(line);
        start = nl + 1;
    }
    return lines;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw std::runtime_error("read failed: " + p.string());
    return ss.str();
}

void write_file(const std::filesystem::path& p, std::string_view contents) {
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write file: " + p.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw std::runtime_error("write failed: " + p.string());
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_score(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

} // namespace lineage
