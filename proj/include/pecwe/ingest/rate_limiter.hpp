#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <mutex>

namespace pecwe {

/// Sliding-window request pacer: at most `max_requests` acquisitions in any
/// trailing `window`. Clock and sleep are injectable so tests can drive
/// time instead of waiting it out.
class RateLimiter {
 public:
  using TimePoint = std::chrono::steady_clock::time_point;
  using Clock = std::function<TimePoint()>;
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit RateLimiter(int max_requests,
                       std::chrono::milliseconds window = std::chrono::seconds(30));
  RateLimiter(int max_requests, std::chrono::milliseconds window, Clock clock,
              Sleeper sleeper);

  /// Blocks until a request may proceed, then records it.
  void acquire();

  int max_requests() const noexcept { return max_requests_; }
  std::chrono::milliseconds window() const noexcept { return window_; }

 private:
  int max_requests_;
  std::chrono::milliseconds window_;
  Clock clock_;
  Sleeper sleeper_;
  std::mutex mutex_;
  std::deque<TimePoint> history_;
};

}  // namespace pecwe
