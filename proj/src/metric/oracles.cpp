#include "pecwe/metric/oracles.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "pecwe/errors.hpp"

namespace pecwe {

double pecwe_bruteforce_oracle(std::span<const double> scores) {
  const std::size_t n = scores.size();
  if (n > 20) {
    fail(ErrorKind::TooLarge, "brute-force oracle limited to 20 scores, got " +
                                  std::to_string(n));
  }
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) fail(ErrorKind::Parse, "score out of [0,1]");
  }
  // Extended precision keeps the 2^n-term sum well inside the tolerance the
  // implementation is compared at.
  long double hit_mass = 0.0L;
  const std::uint64_t outcomes = 1ull << n;
  for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
    long double mass = 1.0L;
    bool any_exploit = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ull << i)) {
        mass *= scores[i];
        any_exploit = true;
      } else {
        mass *= 1.0L - scores[i];
      }
    }
    if (any_exploit) hit_mass += mass;
  }
  return static_cast<double>(hit_mass);
}

MonteCarloEstimate pecwe_montecarlo_oracle(std::span<const double> scores,
                                           std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) {
    fail(ErrorKind::DegenerateInput, "Monte Carlo oracle needs at least one trial");
  }
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) fail(ErrorKind::Parse, "score out of [0,1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (double s : scores) {
      if (unit(rng) < s) {
        ++hits;
        break;  // one exploit settles the trial
      }
    }
  }
  double estimate = static_cast<double>(hits) / static_cast<double>(trials);
  double std_error =
      std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
  return {estimate, std_error};
}

}  // namespace pecwe
