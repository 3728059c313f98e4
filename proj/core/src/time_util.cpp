#include "gridplan/time_util.hpp"

#include <cstdio>

#include "gridplan/errors.hpp"

namespace gridplan {

std::int64_t days_from_civil(int y, int m, int d) {
    // Howard Hinnant's algorithm: shift the year so the leap day is the last
    // day of the shifted year, then count days era by era.
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

int day_of_week(std::int64_t serial_day) {
    // 1970-01-01 was a Thursday.
    return static_cast<int>(((serial_day % 7) + 7 + 4) % 7);
}

std::int64_t to_unix_seconds(const Timestamp& ts) {
    return days_from_civil(ts.year, ts.month, ts.day) * 86400
           + ts.hour * 3600 + ts.minute * 60 + ts.second;
}

Timestamp from_unix_seconds(std::int64_t secs) {
    std::int64_t days = secs / 86400;
    std::int64_t rem = secs % 86400;
    if (rem < 0) {
        days -= 1;
        rem += 86400;
    }
    Timestamp ts;
    civil_from_days(days, ts.year, ts.month, ts.day);
    ts.hour = static_cast<int>(rem / 3600);
    ts.minute = static_cast<int>((rem % 3600) / 60);
    ts.second = static_cast<int>(rem % 60);
    return ts;
}

Timestamp parse_timestamp(const std::string& text) {
    Timestamp ts;
    char tail[3] = {0, 0, 0};
    int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%2s",
                        &ts.year, &ts.month, &ts.day,
                        &ts.hour, &ts.minute, &ts.second, tail);
    if (n < 6 || (n == 7 && std::string(tail) != "Z"))
        throw ParseError("bad timestamp '" + text +
                         "' (expected YYYY-MM-DDTHH:MM:SS[Z])");
    if (ts.month < 1 || ts.month > 12 || ts.day < 1 || ts.day > 31 ||
        ts.hour < 0 || ts.hour > 23 || ts.minute < 0 || ts.minute > 59 ||
        ts.second < 0 || ts.second > 60)
        throw ParseError("out-of-range timestamp '" + text + "'");
    return ts;
}

std::string format_timestamp(const Timestamp& ts) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  ts.year, ts.month, ts.day, ts.hour, ts.minute, ts.second);
    return buf;
}

}  // namespace gridplan
