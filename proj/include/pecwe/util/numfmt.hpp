#pragma once

#include <string>

namespace pecwe {

/// Shortest decimal text that round-trips to the same double. Integral
/// values keep a ".0" suffix so the text is unambiguously floating point.
std::string float_repr(double value);

/// Fixed-point rendering with the given number of decimals (printf %.Nf).
std::string fixed_decimals(double value, int decimals);

}  // namespace pecwe
