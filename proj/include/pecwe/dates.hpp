#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pecwe {

/// A calendar date (UTC, day resolution) as used by EPSS score files.
class ScoreDate {
 public:
  ScoreDate(int year, unsigned month, unsigned day);

  /// Parses strict "YYYY-MM-DD". A trailing time-of-day suffix starting
  /// with 'T' is ignored, matching the EPSS header comment format.
  static ScoreDate parse(std::string_view text);

  std::string to_string() const;

  std::chrono::sys_days days() const noexcept { return std::chrono::sys_days(ymd_); }
  std::chrono::weekday weekday() const noexcept { return std::chrono::weekday(days()); }
  ScoreDate plus_days(int n) const;

  friend auto operator<=>(const ScoreDate& a, const ScoreDate& b) noexcept {
    return a.days() <=> b.days();
  }
  friend bool operator==(const ScoreDate& a, const ScoreDate& b) noexcept {
    return a.days() == b.days();
  }

 private:
  explicit ScoreDate(std::chrono::year_month_day ymd) noexcept : ymd_(ymd) {}

  std::chrono::year_month_day ymd_;
};

/// Half-open date interval [start, end) during which one EPSS model version
/// produced the published scores. An absent end means the era is still open.
struct EpssVersionEra {
  int version;
  ScoreDate start;
  std::optional<ScoreDate> end;

  bool contains(const ScoreDate& d) const {
    return d >= start && (!end || d < *end);
  }
  std::string label() const { return "v" + std::to_string(version); }
};

/// The three published EPSS model eras. v1 begins with the first weekly
/// snapshot; each later era begins the day its model's scores first appear.
std::vector<EpssVersionEra> default_eras();

}  // namespace pecwe
