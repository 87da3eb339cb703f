#pragma once

// Whole-day calendar dates with ISO-8601 text form.

#include <chrono>
#include <compare>
#include <cstdio>
#include <string>
#include <string_view>

#include "dayshift/errors.hpp"

namespace dayshift {

class Date {
 public:
  Date() = default;

  static Date from_ymd(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    if (!ymd.ok()) {
      throw DataError("invalid calendar date: " + std::to_string(year) + "-" + std::to_string(month) +
                      "-" + std::to_string(day));
    }
    return Date(std::chrono::sys_days{ymd});
  }

  // Parses strict `YYYY-MM-DD`.
  static Date parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
      throw DataError("invalid date (expected YYYY-MM-DD): '" + std::string(iso) + "'");
    }
    auto digits = [&](std::size_t pos, std::size_t len) -> int {
      int v = 0;
      for (std::size_t i = pos; i < pos + len; ++i) {
        if (iso[i] < '0' || iso[i] > '9') {
          throw DataError("invalid date (expected YYYY-MM-DD): '" + std::string(iso) + "'");
        }
        v = v * 10 + (iso[i] - '0');
      }
      return v;
    };
    return from_ymd(digits(0, 4), static_cast<unsigned>(digits(5, 2)), static_cast<unsigned>(digits(8, 2)));
  }

  std::string iso() const {
    std::chrono::year_month_day ymd{days_};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
  }

  // 0 = Monday .. 6 = Sunday.
  int weekday_mon0() const {
    std::chrono::weekday wd{days_};
    return static_cast<int>(wd.iso_encoding()) - 1;
  }

  bool is_saturday() const { return weekday_mon0() == 5; }
  bool is_sunday() const { return weekday_mon0() == 6; }

  // ISO-8601 week number (the week containing the year's first Thursday is week 1).
  int iso_week() const {
    std::chrono::year_month_day ymd{days_};
    int year = static_cast<int>(ymd.year());
    auto ordinal = [&](int y) {
      return static_cast<int>((days_ - std::chrono::sys_days{std::chrono::year{y} / 1 / 1}).count()) + 1;
    };
    int week = (ordinal(year) - (weekday_mon0() + 1) + 10) / 7;
    if (week < 1) {
      // Belongs to the last week of the previous year.
      Date dec31 = from_ymd(year - 1, 12, 31);
      return dec31.iso_week();
    }
    if (week == 53) {
      // Week 53 exists only when Jan 1 of the next year falls on Fri/Sat/Sun.
      int wd_jan1 = Date::from_ymd(year + 1, 1, 1).weekday_mon0();
      if (wd_jan1 <= 3) return 1;
    }
    return week;
  }

  Date operator+(int days) const { return Date(days_ + std::chrono::days{days}); }
  Date operator-(int days) const { return Date(days_ - std::chrono::days{days}); }
  int operator-(Date other) const { return static_cast<int>((days_ - other.days_).count()); }
  Date& operator++() {
    days_ += std::chrono::days{1};
    return *this;
  }

  auto operator<=>(const Date&) const = default;

 private:
  explicit Date(std::chrono::sys_days d) : days_(d) {}
  std::chrono::sys_days days_{};
};

}  // namespace dayshift
