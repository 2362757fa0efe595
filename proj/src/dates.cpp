#include "pecwe/dates.hpp"

#include <charconv>
#include <cstdio>

#include "pecwe/errors.hpp"

namespace pecwe {
namespace {

int parse_int_field(std::string_view text, std::size_t pos, std::size_t len) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
  if (ec != std::errc() || ptr != text.data() + pos + len) {
    fail(ErrorKind::Parse, "bad date: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ScoreDate::ScoreDate(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year(year), std::chrono::month(month), std::chrono::day(day)) {
  if (!ymd_.ok()) {
    fail(ErrorKind::Parse, "invalid calendar date " + std::to_string(year) + "-" +
                               std::to_string(month) + "-" + std::to_string(day));
  }
}

ScoreDate ScoreDate::parse(std::string_view text) {
  if (auto t = text.find('T'); t != std::string_view::npos) {
    text = text.substr(0, t);
  }
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    fail(ErrorKind::Parse, "bad date: '" + std::string(text) + "'");
  }
  int year = parse_int_field(text, 0, 4);
  int month = parse_int_field(text, 5, 2);
  int day = parse_int_field(text, 8, 2);
  return ScoreDate(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
}

std::string ScoreDate::to_string() const {
  char buf[11];
  int y = static_cast<int>(ymd_.year());
  unsigned m = static_cast<unsigned>(ymd_.month());
  unsigned d = static_cast<unsigned>(ymd_.day());
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
  return buf;
}

ScoreDate ScoreDate::plus_days(int n) const {
  return ScoreDate(std::chrono::year_month_day(days() + std::chrono::days(n)));
}

std::vector<EpssVersionEra> default_eras() {
  ScoreDate v1_start(2021, 4, 14);
  ScoreDate v2_start(2022, 2, 4);
  ScoreDate v3_start(2023, 3, 7);
  return {
      {1, v1_start, v2_start},
      {2, v2_start, v3_start},
      {3, v3_start, std::nullopt},
  };
}

}  // namespace pecwe
