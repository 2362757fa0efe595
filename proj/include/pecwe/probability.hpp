#pragma once

#include <compare>

#include "pecwe/errors.hpp"

namespace pecwe {

/// A probability in [0, 1]. Construction rejects NaN and out-of-range
/// values, so downstream math never has to re-check.
class Probability {
 public:
  constexpr Probability() noexcept : value_(0.0) {}

  explicit Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      fail(ErrorKind::Parse, "probability out of [0,1]");
    }
  }

  /// Clamps floating-point fuzz back into range; still rejects NaN.
  static Probability clamped(double value) {
    if (!(value == value)) fail(ErrorKind::Parse, "probability is NaN");
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return Probability(value);
  }

  double value() const noexcept { return value_; }

  friend auto operator<=>(const Probability&, const Probability&) noexcept = default;

 private:
  double value_;
};

}  // namespace pecwe
