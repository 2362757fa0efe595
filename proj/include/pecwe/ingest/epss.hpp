#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pecwe/feeds.hpp"
#include "pecwe/ingest/feed_source.hpp"

namespace pecwe {

/// Canonical file name of one day's score file, e.g.
/// "epss_scores-2023-03-08.csv.gz".
std::string epss_filename(const ScoreDate& date);

/// Parses decompressed EPSS CSV text. Expected layout: a comment line
/// "#model_version:<tag>,score_date:<iso8601>", a "cve,epss,percentile"
/// header, then data rows. Parse errors name the offending data row,
/// counting from 1. The percentile column is validated numeric but not
/// kept. When `expected_date` is given, a mismatching header date is a
/// Parse error.
EpssSnapshot parse_epss_csv(std::string_view text,
                            std::optional<ScoreDate> expected_date = std::nullopt);

/// Renders a snapshot back to feed-shaped CSV. Scores round-trip exactly;
/// the unstored percentile column is written as 0.
std::string serialize_epss_csv(const EpssSnapshot& snapshot);

/// Fetches and parses one day's snapshot. A date whose file does not exist
/// (local) or returns 404 (live) raises NotPublished: EPSS simply has no
/// scores for that date, which happens for real gaps in the feed.
class EpssFeed {
 public:
  explicit EpssFeed(FeedSource source) : source_(std::move(source)) {}

  /// Raw gzip bytes exactly as published, suitable for cache storage.
  std::string fetch_raw(const ScoreDate& date) const;

  EpssSnapshot fetch(const ScoreDate& date) const;

  const FeedSource& source() const noexcept { return source_; }

 private:
  FeedSource source_;
};

}  // namespace pecwe
