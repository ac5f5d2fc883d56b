#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// UTC calendar arithmetic and tweet timestamp parsing.
//
// Timestamps are held as seconds since the Unix epoch; dates are held as
// days since the epoch. Everything is UTC — we never consult the C locale
// or the process time zone, so results are identical on every machine.

namespace epitopic {

// Howard Hinnant's civil-date algorithms (public domain).
inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);           // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1; // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;          // [0, 146096]
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
    int year;
    unsigned month;
    unsigned day;
};

inline CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);        // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);        // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                             // [0, 11]
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;                     // [1, 31]
    const unsigned m = mp + (mp < 10 ? 3 : -9);                          // [1, 12]
    return {y + (m <= 2), m, d};
}

// Days since epoch -> "YYYY-MM-DD".
std::string date_to_string(std::int32_t days);

// "YYYY-MM-DD" -> days since epoch.
std::optional<std::int32_t> date_from_string(std::string_view s);

// Parse a tweet creation timestamp. Accepted forms:
//   - ISO 8601: "2020-02-01T12:34:56Z", with optional fractional seconds
//     and "+hh:mm"/"+hhmm"/"Z" offsets; a bare "2020-02-01" is midnight UTC.
//   - classic API format: "Sat Feb 01 12:34:56 +0000 2020".
// Returns seconds since epoch (UTC), or nullopt if unparseable.
std::optional<std::int64_t> parse_timestamp(std::string_view s);

// Seconds since epoch -> days since epoch (floor).
inline std::int32_t day_of(std::int64_t epoch_seconds) {
    std::int64_t d = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) --d;
    return static_cast<std::int32_t>(d);
}

// Seconds since epoch -> "YYYY-MM-DDThh:mm:ssZ".
std::string timestamp_to_string(std::int64_t epoch_seconds);

}  // namespace epitopic
