#include "hrpkit/date.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "hrpkit/error.hpp"

namespace hrpkit {

namespace {

std::optional<int> parse_digits(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<Date> make_date(int y, int m, int d) {
  using namespace std::chrono;
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{sys_days{ymd}};
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  auto d = make_date(year, static_cast<int>(month), static_cast<int>(day));
  if (!d) throw InvalidArgument("invalid calendar date");
  days_ = d->days_;
}

std::optional<Date> Date::parse_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = parse_digits(text.substr(0, 4));
  auto m = parse_digits(text.substr(5, 2));
  auto d = parse_digits(text.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  return make_date(*y, *m, *d);
}

std::optional<Date> Date::parse(std::string_view text, const std::string& format) {
  if (format == "%Y-%m-%d") return parse_iso(text);
  std::tm tm{};
  tm.tm_mday = -1;
  std::istringstream in{std::string(text)};
  in >> std::get_time(&tm, format.c_str());
  if (in.fail() || tm.tm_mday < 1) return std::nullopt;
  in >> std::ws;
  if (!in.eof()) return std::nullopt;
  return make_date(tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday);
}

Date Date::from_iso(std::string_view text) {
  auto d = parse_iso(text);
  if (!d) throw InvalidArgument("not an ISO-8601 date: '" + std::string(text) + "'");
  return *d;
}

std::string Date::iso() const {
  std::chrono::year_month_day ymd{sys_days()};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

bool Date::is_weekday() const {
  std::chrono::weekday wd{sys_days()};
  return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
}

}  // namespace hrpkit
