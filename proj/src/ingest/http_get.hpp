#pragma once

#include <map>
#include <string>

namespace pecwe {

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Single GET against base_url + path. base_url may carry a path prefix.
/// Connection-level failures raise Transport; HTTP status handling is the
/// caller's business.
HttpResponse http_get(const std::string& base_url, const std::string& path,
                      const std::map<std::string, std::string>& headers = {});

}  // namespace pecwe
