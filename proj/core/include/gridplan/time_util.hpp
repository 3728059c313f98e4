#pragma once

#include <cstdint>
#include <string>

namespace gridplan {

// Calendar date plus a UTC time of day.  All series in this project are UTC;
// no timezone handling beyond the trailing 'Z'.
struct Timestamp {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;

    bool operator==(const Timestamp&) const = default;
};

// Serial day number with day 0 = 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);

// Inverse of days_from_civil.
void civil_from_days(std::int64_t serial, int& year, int& month, int& day);

// 0 = Sunday ... 6 = Saturday.
int day_of_week(std::int64_t serial_day);

inline bool is_weekend(std::int64_t serial_day) {
    int dow = day_of_week(serial_day);
    return dow == 0 || dow == 6;
}

// Seconds since 1970-01-01T00:00:00Z.
std::int64_t to_unix_seconds(const Timestamp& ts);
Timestamp from_unix_seconds(std::int64_t secs);

// Strict ISO-8601 "YYYY-MM-DDTHH:MM:SS" with optional trailing "Z".
// Throws ParseError on anything else.
Timestamp parse_timestamp(const std::string& text);
std::string format_timestamp(const Timestamp& ts);

}  // namespace gridplan
