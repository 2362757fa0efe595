#include "pecwe/util/numfmt.hpp"

#include <charconv>
#include <cstdio>

namespace pecwe {

std::string float_repr(double value) {
  char buf[48];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  std::string out(buf, ptr);
  if (out.find_first_of(".en") == std::string::npos) {
    out += ".0";
  }
  return out;
}

std::string fixed_decimals(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace pecwe
