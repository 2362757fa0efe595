#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "src/ingest/http_get.hpp"

#include <httplib.h>

#include "pecwe/errors.hpp"

namespace pecwe {
namespace {

// "https://host:port/prefix" -> ("https://host:port", "/prefix")
std::pair<std::string, std::string> split_origin(const std::string& base_url) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    fail(ErrorKind::Usage, "not a URL: " + base_url);
  }
  auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {base_url, ""};
  }
  return {base_url.substr(0, path_start), base_url.substr(path_start)};
}

}  // namespace

HttpResponse http_get(const std::string& base_url, const std::string& path,
                      const std::map<std::string, std::string>& headers) {
  auto [origin, prefix] = split_origin(base_url);
  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);
  httplib::Headers hdrs;
  for (const auto& [k, v] : headers) hdrs.emplace(k, v);
  auto result = client.Get(prefix + path, hdrs);
  if (!result) {
    fail(ErrorKind::Transport,
         "GET " + base_url + path + " failed: " + httplib::to_string(result.error()));
  }
  return {result->status, std::move(result->body)};
}

}  // namespace pecwe
