#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hrpkit {

/// A calendar day. Stored as days since 1970-01-01 so comparison and
/// hashing are trivial.
class Date {
 public:
  constexpr Date() = default;
  explicit Date(std::chrono::sys_days days) : days_(days.time_since_epoch().count()) {}
  Date(int year, unsigned month, unsigned day);

  /// Strict YYYY-MM-DD. Rejects impossible days such as 2021-02-30.
  static std::optional<Date> parse_iso(std::string_view text);

  /// strptime-style pattern (only %Y %m %d %b %y and literals are needed in
  /// practice). "%Y-%m-%d" takes the fast ISO path.
  static std::optional<Date> parse(std::string_view text, const std::string& format);

  /// Throws InvalidArgument on failure.
  static Date from_iso(std::string_view text);

  [[nodiscard]] std::string iso() const;
  [[nodiscard]] std::chrono::sys_days sys_days() const {
    return std::chrono::sys_days{std::chrono::days{days_}};
  }
  [[nodiscard]] std::int32_t serial() const { return days_; }
  [[nodiscard]] bool is_weekday() const;

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::int32_t days_ = 0;
};

}  // namespace hrpkit
