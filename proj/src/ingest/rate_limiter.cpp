#include "pecwe/ingest/rate_limiter.hpp"

#include <algorithm>
#include <thread>

#include "pecwe/errors.hpp"

namespace pecwe {

RateLimiter::RateLimiter(int max_requests, std::chrono::milliseconds window)
    : RateLimiter(max_requests, window, [] { return std::chrono::steady_clock::now(); },
                  [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {}

RateLimiter::RateLimiter(int max_requests, std::chrono::milliseconds window,
                         Clock clock, Sleeper sleeper)
    : max_requests_(max_requests),
      window_(window),
      clock_(std::move(clock)),
      sleeper_(std::move(sleeper)) {
  if (max_requests < 1) {
    fail(ErrorKind::Usage, "rate limit must allow at least one request per window");
  }
}

void RateLimiter::acquire() {
  // Sleeping under the lock is deliberate: the limit is global, so a caller
  // waiting for capacity must also stall every other caller.
  std::lock_guard<std::mutex> guard(mutex_);
  for (;;) {
    TimePoint now = clock_();
    while (!history_.empty() && now - history_.front() >= window_) {
      history_.pop_front();
    }
    if (history_.size() < static_cast<std::size_t>(max_requests_)) {
      history_.push_back(now);
      return;
    }
    auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(
        history_.front() + window_ - now);
    sleeper_(std::max(wait, std::chrono::milliseconds(1)));
  }
}

}  // namespace pecwe
