#include "pecwe/ingest/feed_source.hpp"

#include "pecwe/errors.hpp"

namespace pecwe {

FeedSource FeedSource::http(std::string base_url) {
  if (base_url.rfind("http://", 0) != 0 && base_url.rfind("https://", 0) != 0) {
    fail(ErrorKind::Usage, "feed URL must start with http:// or https://: " + base_url);
  }
  while (!base_url.empty() && base_url.back() == '/') base_url.pop_back();
  FeedSource s;
  s.kind_ = Kind::LiveHttp;
  s.base_url_ = std::move(base_url);
  return s;
}

FeedSource FeedSource::local(std::filesystem::path directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    fail(ErrorKind::Usage, "feed directory does not exist: " + directory.string());
  }
  FeedSource s;
  s.kind_ = Kind::LocalDirectory;
  s.directory_ = std::move(directory);
  return s;
}

FeedSource feed_source_from_location(const std::string& location) {
  if (location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0) {
    return FeedSource::http(location);
  }
  return FeedSource::local(location);
}

}  // namespace pecwe
