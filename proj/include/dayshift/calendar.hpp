#pragma once

// Calendar regimes for transaction days: working days, Saturdays,
// Sundays/holidays, and school-holiday weekdays.

#include <array>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dayshift/dates.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/util.hpp"

namespace dayshift {

enum class DayType { kWorking = 0, kSaturday = 1, kSundayOrHoliday = 2, kSchoolHoliday = 3 };

inline constexpr int kNumDayTypes = 4;

inline std::string_view day_type_name(DayType t) {
  switch (t) {
    case DayType::kWorking: return "Working";
    case DayType::kSaturday: return "Saturday";
    case DayType::kSundayOrHoliday: return "SundayOrHoliday";
    case DayType::kSchoolHoliday: return "SchoolHoliday";
  }
  return "?";
}

inline DayType parse_day_type(std::string_view s) {
  if (s == "Working") return DayType::kWorking;
  if (s == "Saturday") return DayType::kSaturday;
  if (s == "SundayOrHoliday") return DayType::kSundayOrHoliday;
  if (s == "SchoolHoliday") return DayType::kSchoolHoliday;
  throw DataError("unknown day type: '" + std::string(s) + "'");
}

struct CalendarModel {
  Date start;
  int n_days = 0;
  std::set<Date> holidays;                            // treated like Sundays
  std::vector<std::pair<Date, Date>> school_ranges;   // inclusive date intervals

  bool contains(Date d) const { return d >= start && d - start < n_days; }

  void validate() const {
    if (n_days <= 0) throw DataError("calendar needs at least one day");
    for (const Date& h : holidays) {
      if (!contains(h)) throw DataError("holiday outside calendar range: " + h.iso());
    }
    for (const auto& [lo, hi] : school_ranges) {
      if (lo > hi) throw DataError("school-holiday range is reversed");
      if (!contains(lo) || !contains(hi)) throw DataError("school-holiday range outside calendar");
    }
  }
};

// Total assignment rule; holidays dominate, then weekend, then school ranges.
inline DayType assign_day_type(const CalendarModel& cal, Date date) {
  if (!cal.contains(date)) throw DataError("date outside calendar range: " + date.iso());
  if (cal.holidays.count(date) || date.is_sunday()) return DayType::kSundayOrHoliday;
  if (date.is_saturday()) return DayType::kSaturday;
  for (const auto& [lo, hi] : cal.school_ranges) {
    if (date >= lo && date <= hi) return DayType::kSchoolHoliday;
  }
  return DayType::kWorking;
}

inline std::vector<DayType> day_types(const CalendarModel& cal) {
  std::vector<DayType> out;
  out.reserve(static_cast<std::size_t>(cal.n_days));
  for (int d = 0; d < cal.n_days; ++d) out.push_back(assign_day_type(cal, cal.start + d));
  return out;
}

// The 92 days from 2015-03-01 through 2015-05-31 with Belgian public holidays
// (Easter Monday, Labor Day, Ascension, Whit Monday) and the Easter school
// holiday weeks.
inline CalendarModel belgian_calendar_2015() {
  CalendarModel cal;
  cal.start = Date::from_ymd(2015, 3, 1);
  cal.n_days = 92;
  cal.holidays = {Date::from_ymd(2015, 4, 6), Date::from_ymd(2015, 5, 1), Date::from_ymd(2015, 5, 14),
                  Date::from_ymd(2015, 5, 25)};
  cal.school_ranges = {{Date::from_ymd(2015, 4, 6), Date::from_ymd(2015, 4, 17)}};
  cal.validate();
  return cal;
}

// Ground-truth sidecar: `date,day_type`, one row per calendar day.
inline void save_day_types(const std::filesystem::path& path, const CalendarModel& cal) {
  std::string text = "date,day_type\n";
  for (int d = 0; d < cal.n_days; ++d) {
    Date date = cal.start + d;
    text += date.iso();
    text += ',';
    text += day_type_name(assign_day_type(cal, date));
    text += '\n';
  }
  write_text_file(path, text);
}

inline std::vector<std::pair<Date, DayType>> load_day_types(const std::filesystem::path& path) {
  auto lines = split_lines(read_text_file(path));
  if (lines.empty() || lines[0] != "date,day_type") {
    throw DataError(path.string() + ": expected 'date,day_type' header");
  }
  std::vector<std::pair<Date, DayType>> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split(lines[i], ',');
    if (fields.size() != 2) throw DataError(path.string() + ":" + std::to_string(i + 1) + ": bad row");
    out.emplace_back(Date::parse(fields[0]), parse_day_type(fields[1]));
  }
  return out;
}

}  // namespace dayshift
