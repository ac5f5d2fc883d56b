#include "epitopic/timeutil.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace epitopic {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parse exactly n digits at s[pos..]; advances pos on success.
bool read_digits(std::string_view s, std::size_t& pos, int n, int& out) {
    if (pos + static_cast<std::size_t>(n) > s.size()) return false;
    int v = 0;
    for (int i = 0; i < n; ++i) {
        char c = s[pos + static_cast<std::size_t>(i)];
        if (!is_digit(c)) return false;
        v = v * 10 + (c - '0');
    }
    pos += static_cast<std::size_t>(n);
    out = v;
    return true;
}

bool valid_ymd(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static constexpr std::array<int, 12> len = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
    int maxd = len[static_cast<std::size_t>(m - 1)];
    if (m == 2 && (y % 4 == 0 && (y % 100 != 0 || y % 400 == 0))) maxd = 29;
    return d <= maxd;
}

constexpr std::array<std::string_view, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

// "Sat Feb 01 12:34:56 +0000 2020"
std::optional<std::int64_t> parse_classic(std::string_view s) {
    if (s.size() < 30) return std::nullopt;
    // Skip the weekday name; it is redundant and we do not verify it.
    if (s[3] != ' ' || s[7] != ' ') return std::nullopt;
    int month = 0;
    for (std::size_t m = 0; m < kMonthNames.size(); ++m) {
        if (s.substr(4, 3) == kMonthNames[m]) {
            month = static_cast<int>(m) + 1;
            break;
        }
    }
    if (month == 0) return std::nullopt;
    std::size_t pos = 8;
    int day = 0, hh = 0, mm = 0, ss = 0;
    if (!read_digits(s, pos, 2, day) || pos >= s.size() || s[pos++] != ' ')
        return std::nullopt;
    if (!read_digits(s, pos, 2, hh) || pos >= s.size() || s[pos++] != ':')
        return std::nullopt;
    if (!read_digits(s, pos, 2, mm) || pos >= s.size() || s[pos++] != ':')
        return std::nullopt;
    if (!read_digits(s, pos, 2, ss) || pos >= s.size() || s[pos++] != ' ')
        return std::nullopt;
    if (pos >= s.size()) return std::nullopt;
    char sign = s[pos++];
    if (sign != '+' && sign != '-') return std::nullopt;
    int off_h = 0, off_m = 0;
    if (!read_digits(s, pos, 2, off_h) || !read_digits(s, pos, 2, off_m))
        return std::nullopt;
    if (pos >= s.size() || s[pos++] != ' ') return std::nullopt;
    int year = 0;
    if (!read_digits(s, pos, 4, year) || pos != s.size()) return std::nullopt;
    if (!valid_ymd(year, month, day) || hh > 23 || mm > 59 || ss > 60)
        return std::nullopt;
    std::int64_t t = days_from_civil(year, static_cast<unsigned>(month),
                                     static_cast<unsigned>(day)) * 86400 +
                     hh * 3600 + mm * 60 + ss;
    std::int64_t off = (off_h * 60 + off_m) * 60;
    return sign == '+' ? t - off : t + off;
}

std::optional<std::int64_t> parse_iso(std::string_view s) {
    std::size_t pos = 0;
    int year = 0, month = 0, day = 0;
    if (!read_digits(s, pos, 4, year) || pos >= s.size() || s[pos++] != '-')
        return std::nullopt;
    if (!read_digits(s, pos, 2, month) || pos >= s.size() || s[pos++] != '-')
        return std::nullopt;
    if (!read_digits(s, pos, 2, day)) return std::nullopt;
    if (!valid_ymd(year, month, day)) return std::nullopt;
    std::int64_t t = days_from_civil(year, static_cast<unsigned>(month),
                                     static_cast<unsigned>(day)) * 86400;
    if (pos == s.size()) return t;  // bare date, midnight UTC
    char sep = s[pos++];
    if (sep != 'T' && sep != 't' && sep != ' ') return std::nullopt;
    int hh = 0, mm = 0, ss = 0;
    if (!read_digits(s, pos, 2, hh) || pos >= s.size() || s[pos++] != ':')
        return std::nullopt;
    if (!read_digits(s, pos, 2, mm)) return std::nullopt;
    if (pos < s.size() && s[pos] == ':') {
        ++pos;
        if (!read_digits(s, pos, 2, ss)) return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    t += hh * 3600 + mm * 60 + ss;
    // Fractional seconds: parsed and discarded.
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && is_digit(s[pos])) ++pos;
        if (pos == start) return std::nullopt;
    }
    if (pos == s.size()) return t;  // no offset: treat as UTC
    char c = s[pos++];
    if (c == 'Z' || c == 'z') return pos == s.size() ? std::optional(t) : std::nullopt;
    if (c != '+' && c != '-') return std::nullopt;
    int off_h = 0, off_m = 0;
    if (!read_digits(s, pos, 2, off_h)) return std::nullopt;
    if (pos < s.size() && s[pos] == ':') ++pos;
    if (pos < s.size()) {
        if (!read_digits(s, pos, 2, off_m)) return std::nullopt;
    }
    if (pos != s.size() || off_h > 23 || off_m > 59) return std::nullopt;
    std::int64_t off = (off_h * 60 + off_m) * 60;
    return c == '+' ? t - off : t + off;
}

}  // namespace

std::string date_to_string(std::int32_t days) {
    CivilDate cd = civil_from_days(days);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", cd.year, cd.month, cd.day);
    return buf;
}

std::optional<std::int32_t> date_from_string(std::string_view s) {
    std::size_t pos = 0;
    int y = 0, m = 0, d = 0;
    if (!read_digits(s, pos, 4, y) || pos >= s.size() || s[pos++] != '-')
        return std::nullopt;
    if (!read_digits(s, pos, 2, m) || pos >= s.size() || s[pos++] != '-')
        return std::nullopt;
    if (!read_digits(s, pos, 2, d) || pos != s.size()) return std::nullopt;
    if (!valid_ymd(y, m, d)) return std::nullopt;
    return static_cast<std::int32_t>(
        days_from_civil(y, static_cast<unsigned>(m), static_cast<unsigned>(d)));
}

std::optional<std::int64_t> parse_timestamp(std::string_view s) {
    // Trim surrounding whitespace; feeds are messy.
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    if (s.empty()) return std::nullopt;
    if (is_digit(s[0])) return parse_iso(s);
    return parse_classic(s);
}

std::string timestamp_to_string(std::int64_t epoch_seconds) {
    std::int32_t days = day_of(epoch_seconds);
    std::int64_t rem = epoch_seconds - static_cast<std::int64_t>(days) * 86400;
    CivilDate cd = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", cd.year,
                  cd.month, cd.day, static_cast<int>(rem / 3600),
                  static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
    return buf;
}

}  // namespace epitopic
