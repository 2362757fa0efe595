#include "pecwe/ingest/nvd.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <thread>

#include "pecwe/errors.hpp"
#include "src/ingest/http_get.hpp"

namespace pecwe {

using nlohmann::json;

NvdPage parse_nvd_page(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("NVD page is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vulnerabilities") ||
      !doc["vulnerabilities"].is_array()) {
    fail(ErrorKind::Schema, "NVD page lacks a 'vulnerabilities' array");
  }

  NvdPage page;
  page.total_results = doc.value("totalResults", 0L);
  page.start_index = doc.value("startIndex", 0L);
  const json& vulns = doc["vulnerabilities"];
  page.returned = static_cast<long>(vulns.size());

  for (const json& entry : vulns) {
    const json* cve = entry.is_object() && entry.contains("cve") ? &entry["cve"] : nullptr;
    if (!cve || !cve->is_object() || !cve->contains("id") || !(*cve)["id"].is_string()) {
      fail(ErrorKind::Schema, "NVD record without a CVE id");
    }
    CveId id = CveId::parse((*cve)["id"].get<std::string>());

    std::set<CweId> cwes;
    if (cve->contains("weaknesses") && (*cve)["weaknesses"].is_array()) {
      for (const json& weakness : (*cve)["weaknesses"]) {
        if (!weakness.is_object() || !weakness.contains("description")) continue;
        const json& descriptions = weakness["description"];
        if (!descriptions.is_array()) continue;
        for (const json& description : descriptions) {
          if (!description.is_object() || !description.contains("value") ||
              !description["value"].is_string()) {
            continue;
          }
          try {
            cwes.insert(parse_cwe_id(description["value"].get<std::string>()));
          } catch (const Error&) {
            // Free-text weakness values carry no mapping; skip them.
          }
        }
      }
    }
    if (!cwes.empty()) {
      page.assignments.insert_or_assign(id, std::move(cwes));
    }
  }
  return page;
}

void IndexBuilder::add(const NvdPage& page) { add_assignments(page.assignments); }

void IndexBuilder::add_assignments(const std::map<CveId, std::set<CweId>>& assignments) {
  for (const auto& [cve, cwes] : assignments) {
    assignments_.insert_or_assign(cve, cwes);
  }
}

CveCweIndex IndexBuilder::build(ScoreDate retrieval_date) const {
  return CveCweIndex(assignments_, retrieval_date);
}

NvdFeed::NvdFeed(FeedSource source, std::optional<std::string> api_key,
                 RateLimiter* limiter)
    : source_(std::move(source)),
      api_key_(std::move(api_key)),
      limiter_(limiter),
      retry_sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {}

void NvdFeed::set_retry_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
  retry_sleeper_ = std::move(sleeper);
}

void NvdFeed::set_page_size(int page_size) {
  if (page_size < 1) fail(ErrorKind::Usage, "page size must be positive");
  page_size_ = page_size;
}

NvdPage NvdFeed::fetch_page(long start_index) const {
  if (!source_.is_live()) {
    std::filesystem::path path =
        source_.directory() / ("page-" + std::to_string(start_index) + ".json");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      fail(ErrorKind::Transport, "missing NVD page file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_nvd_page(buffer.str());
  }

  std::string path = "/rest/json/cves/2.0?resultsPerPage=" +
                     std::to_string(page_size_) +
                     "&startIndex=" + std::to_string(start_index);
  std::map<std::string, std::string> headers;
  if (api_key_) headers.emplace("apiKey", *api_key_);

  constexpr int kAttempts = 4;
  for (int attempt = 1;; ++attempt) {
    if (limiter_) limiter_->acquire();
    HttpResponse response = http_get(source_.base_url(), path, headers);
    if (response.status == 200) {
      return parse_nvd_page(response.body);
    }
    bool retryable = response.status == 403 || response.status == 429 ||
                     response.status >= 500;
    if (!retryable) {
      fail(ErrorKind::Transport, "NVD returned HTTP " + std::to_string(response.status));
    }
    if (attempt == kAttempts) {
      fail(ErrorKind::RateLimited, "NVD kept refusing after " +
                                       std::to_string(kAttempts) + " attempts (HTTP " +
                                       std::to_string(response.status) + ")");
    }
    retry_sleeper_(std::chrono::milliseconds(1000 * attempt));
  }
}

}  // namespace pecwe
