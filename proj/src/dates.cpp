#include "mfscast/dates.hpp"

#include <cstdio>

namespace mfs {

namespace {

// days since 1970-01-01 for a civil date (Hinnant)
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = yy + (m <= 2);
}

}  // namespace

Date make_date(int year, int month, int day) {
    return Date{static_cast<std::int32_t>(days_from_civil(year, month, day))};
}

void civil_of(Date d, int& year, int& month, int& day) {
    std::int64_t y;
    civil_from_days(d.days_since_epoch, y, month, day);
    year = static_cast<int>(y);
}

std::optional<Date> parse_date(const std::string& s) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &extra) != 3)
        return std::nullopt;
    if (m < 1 || m > 12 || d < 1) return std::nullopt;
    const Date date = make_date(y, m, d);
    // reject day-of-month overflow ("2020-02-30") by round-tripping
    int y2, m2, d2;
    civil_of(date, y2, m2, d2);
    if (y2 != y || m2 != m || d2 != d) return std::nullopt;
    return date;
}

std::string format_date(Date d) {
    int y, m, dd;
    civil_of(d, y, m, dd);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, dd);
    return buf;
}

std::optional<std::int64_t> parse_timestamp(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
    int n = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &se, &n) != 6)
        return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 ||
        se < 0 || se > 60)
        return std::nullopt;
    const char* rest = s.c_str() + n;
    if (*rest == '.') {  // fractional seconds, ignored
        ++rest;
        if (*rest < '0' || *rest > '9') return std::nullopt;
        while (*rest >= '0' && *rest <= '9') ++rest;
    }
    if (*rest == 'Z') ++rest;
    if (*rest != '\0') return std::nullopt;
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

std::string format_timestamp(std::int64_t t) {
    std::int64_t day = t / 86400;
    std::int64_t sec = t % 86400;
    if (sec < 0) {
        sec += 86400;
        --day;
    }
    std::int64_t y;
    int m, d;
    civil_from_days(day, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", static_cast<int>(y), m, d,
                  static_cast<int>(sec / 3600), static_cast<int>(sec / 60 % 60),
                  static_cast<int>(sec % 60));
    return buf;
}

}  // namespace mfs
