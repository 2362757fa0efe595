#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace pecwe {

/// Where a feed's bytes come from: a live HTTPS endpoint or a directory of
/// previously captured files laid out the same way. Every ingest code path
/// is identical from one abstraction level down, so tests run entirely
/// against local directories.
class FeedSource {
 public:
  enum class Kind { LiveHttp, LocalDirectory };

  static FeedSource http(std::string base_url);
  static FeedSource local(std::filesystem::path directory);

  Kind kind() const noexcept { return kind_; }
  const std::string& base_url() const { return base_url_; }
  const std::filesystem::path& directory() const { return directory_; }

  bool is_live() const noexcept { return kind_ == Kind::LiveHttp; }

 private:
  FeedSource() = default;

  Kind kind_ = Kind::LocalDirectory;
  std::string base_url_;
  std::filesystem::path directory_;
};

/// Chooses by shape: anything starting with http:// or https:// is live,
/// anything else must be an existing directory.
FeedSource feed_source_from_location(const std::string& location);

}  // namespace pecwe
