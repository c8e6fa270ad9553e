#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <string>

namespace mfs {

// Calendar date (UTC). Stored as a day count since 1970-01-01 so that date
// arithmetic and map keys stay trivial.
struct Date {
    std::int32_t days_since_epoch = 0;

    auto operator<=>(const Date&) const = default;

    Date next() const { return Date{days_since_epoch + 1}; }
};

// Howard Hinnant's civil-from-days / days-from-civil algorithms.
Date make_date(int year, int month, int day);
void civil_of(Date d, int& year, int& month, int& day);

// "YYYY-MM-DD"
std::optional<Date> parse_date(const std::string& s);
std::string format_date(Date d);

// ISO-8601 UTC instants: "YYYY-MM-DDTHH:MM:SS", optional fractional seconds,
// optional trailing 'Z'. Returns epoch seconds.
std::optional<std::int64_t> parse_timestamp(const std::string& s);
std::string format_timestamp(std::int64_t epoch_seconds);

inline Date date_of_timestamp(std::int64_t epoch_seconds) {
    // floor division, valid for pre-1970 instants too
    std::int64_t d = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) --d;
    return Date{static_cast<std::int32_t>(d)};
}

// Inclusive day range the analysis is restricted to.
struct AnalysisWindow {
    Date start_day;
    Date end_day;

    bool valid() const { return start_day <= end_day; }
    bool contains(Date d) const { return start_day <= d && d <= end_day; }
    int n_days() const { return end_day.days_since_epoch - start_day.days_since_epoch + 1; }
};

}  // namespace mfs
