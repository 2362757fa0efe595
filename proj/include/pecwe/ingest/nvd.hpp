#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "pecwe/feeds.hpp"
#include "pecwe/ingest/feed_source.hpp"
#include "pecwe/ingest/rate_limiter.hpp"

namespace pecwe {

/// One page of the NVD CVE API 2.0 response, reduced to what the index
/// needs. `next_start` is the resume point, absent once the page covers the
/// tail of the result set.
struct NvdPage {
  std::map<CveId, std::set<CweId>> assignments;
  long total_results = 0;
  long start_index = 0;
  long returned = 0;  ///< records in this page, including dropped ones

  std::optional<long> next_start() const {
    long next = start_index + returned;
    if (returned == 0 || next >= total_results) return std::nullopt;
    return next;
  }
};

/// Extracts CVE -> CWE assignments from one page of NVD JSON text.
/// Weakness description values that are not CWE identifiers are skipped;
/// records that end up with no usable CWE are dropped entirely. A record
/// without a CVE id is a Schema error.
NvdPage parse_nvd_page(std::string_view json_text);

/// Accumulates pages into a CveCweIndex. Re-adding a CVE replaces its
/// assignment set: the last write wins.
class IndexBuilder {
 public:
  void add(const NvdPage& page);
  void add_assignments(const std::map<CveId, std::set<CweId>>& assignments);
  CveCweIndex build(ScoreDate retrieval_date) const;
  std::size_t size() const noexcept { return assignments_.size(); }

 private:
  std::map<CveId, std::set<CweId>> assignments_;
};

/// Paging client for the NVD CVE API. Requests are paced by the limiter;
/// HTTP 403 and 429 responses are retried a few times before surfacing as
/// RateLimited. Local directories serve captured pages named
/// "page-<startIndex>.json".
class NvdFeed {
 public:
  static constexpr int kDefaultPageSize = 2000;
  static constexpr int kKeylessRateLimit = 5;
  static constexpr int kKeyedRateLimit = 50;

  NvdFeed(FeedSource source, std::optional<std::string> api_key,
          RateLimiter* limiter);

  /// Overrides the between-retry delay (tests use a no-op).
  void set_retry_sleeper(std::function<void(std::chrono::milliseconds)> sleeper);
  void set_page_size(int page_size);

  NvdPage fetch_page(long start_index) const;

  /// Appropriate requests-per-30s for the presence of an API key.
  static int default_rate_limit(bool has_key) {
    return has_key ? kKeyedRateLimit : kKeylessRateLimit;
  }

 private:
  FeedSource source_;
  std::optional<std::string> api_key_;
  RateLimiter* limiter_;
  std::function<void(std::chrono::milliseconds)> retry_sleeper_;
  int page_size_ = kDefaultPageSize;
};

}  // namespace pecwe
