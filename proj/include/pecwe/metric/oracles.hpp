#pragma once

#include <cstdint>
#include <span>

namespace pecwe {

/// Exhaustive reference for the combination rule: enumerates all 2^n
/// exploit/no-exploit outcomes and sums the probability mass of outcomes
/// with at least one exploit. Deliberately naive; exists only to check
/// pecwe_from_scores. Throws TooLarge for n > 20.
double pecwe_bruteforce_oracle(std::span<const double> scores);

struct MonteCarloEstimate {
  double estimate;   ///< fraction of trials with at least one exploit
  double std_error;  ///< binomial standard error of the estimate
};

/// Simulates `trials` independent Bernoulli draws per score and reports the
/// observed frequency of at-least-one-exploit. Deterministic for a fixed
/// seed.
MonteCarloEstimate pecwe_montecarlo_oracle(std::span<const double> scores,
                                           std::uint64_t trials, std::uint64_t seed);

}  // namespace pecwe
