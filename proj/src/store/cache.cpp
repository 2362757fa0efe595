#include "pecwe/store/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "pecwe/errors.hpp"
#include "pecwe/ingest/epss.hpp"
#include "pecwe/ingest/view1003.hpp"
#include "pecwe/util/gzip.hpp"
#include "pecwe/util/sha256.hpp"

namespace pecwe {

using nlohmann::json;

namespace {

constexpr int kIndexFormatVersion = 1;

std::optional<std::string> read_file_if_exists(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Temp-file-then-rename so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp =
      path.parent_path() / (path.filename().string() + ".tmp." +
                            std::to_string(static_cast<long>(::getpid())));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot create " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      fail(ErrorKind::Io, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorKind::Io, "failed renaming into " + path.string());
  }
}

/// Advisory whole-cache write lock, released on scope exit.
class ScopedFileLock {
 public:
  explicit ScopedFileLock(const std::filesystem::path& lock_path) {
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) fail(ErrorKind::Io, "cannot open lock file " + lock_path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fail(ErrorKind::Io, "cannot lock " + lock_path.string());
    }
  }
  ~ScopedFileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  ScopedFileLock(const ScopedFileLock&) = delete;
  ScopedFileLock& operator=(const ScopedFileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

CacheLayout CacheLayout::open(const std::filesystem::path& root) {
  std::error_code ec;
  for (const char* sub : {"epss", "nvd", "catalog"}) {
    std::filesystem::create_directories(root / sub, ec);
    if (ec) {
      fail(ErrorKind::Io, "cannot create cache directory " + (root / sub).string() +
                              ": " + ec.message());
    }
  }
  return CacheLayout(root);
}

std::filesystem::path CacheLayout::snapshot_path(const ScoreDate& date) const {
  return epss_dir() / epss_filename(date);
}

std::map<ScoreDate, std::string> CacheLayout::read_manifest() const {
  std::map<ScoreDate, std::string> manifest;
  auto bytes = read_file_if_exists(manifest_path());
  if (!bytes) return manifest;
  std::istringstream in(*bytes);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      fail(ErrorKind::Schema, "manifest line " + std::to_string(line_no) +
                                  " is not '<date>\\t<sha256>'");
    }
    manifest.emplace(ScoreDate::parse(line.substr(0, tab)), line.substr(tab + 1));
  }
  return manifest;
}

void CacheLayout::write_manifest(const std::map<ScoreDate, std::string>& manifest) const {
  std::ostringstream out;
  for (const auto& [date, digest] : manifest) {
    out << date.to_string() << '\t' << digest << '\n';
  }
  atomic_write(manifest_path(), out.str());
}

void CacheLayout::put_snapshot_bytes(const ScoreDate& date, std::string_view gzip_bytes) {
  std::string digest = sha256_hex(gzip_bytes);
  ScopedFileLock lock(root_ / ".lock");

  std::map<ScoreDate, std::string> manifest = read_manifest();
  auto it = manifest.find(date);
  if (it != manifest.end()) {
    if (it->second == digest) return;  // same bytes, nothing to do
    fail(ErrorKind::Conflict, "cache already holds different bytes for " +
                                  date.to_string() + " (cached " + it->second +
                                  ", incoming " + digest + ")");
  }

  atomic_write(snapshot_path(date), gzip_bytes);
  if (before_manifest_commit) before_manifest_commit();
  manifest.emplace(date, std::move(digest));
  write_manifest(manifest);
}

void CacheLayout::put_snapshot(const EpssSnapshot& snapshot) {
  put_snapshot_bytes(snapshot.score_date(), gzip_compress(serialize_epss_csv(snapshot)));
}

bool CacheLayout::has_snapshot(const ScoreDate& date) const {
  return read_manifest().count(date) != 0;
}

std::optional<EpssSnapshot> CacheLayout::get_snapshot(const ScoreDate& date) const {
  std::map<ScoreDate, std::string> manifest = read_manifest();
  auto it = manifest.find(date);
  if (it == manifest.end()) return std::nullopt;
  auto bytes = read_file_if_exists(snapshot_path(date));
  if (!bytes) {
    fail(ErrorKind::Checksum, "manifest lists " + date.to_string() +
                                  " but its snapshot file is missing");
  }
  if (sha256_hex(*bytes) != it->second) {
    fail(ErrorKind::Checksum, "cached bytes for " + date.to_string() +
                                  " do not match their manifest digest");
  }
  return parse_epss_csv(gzip_decompress(*bytes), date);
}

std::vector<ScoreDate> CacheLayout::list_available_dates(const ScoreDate& from,
                                                         const ScoreDate& to) const {
  std::vector<ScoreDate> out;
  for (const auto& [date, digest] : read_manifest()) {
    (void)digest;
    if (date >= from && date <= to) out.push_back(date);
  }
  return out;
}

void CacheLayout::persist_index(const CveCweIndex& index) {
  json assignments = json::object();
  for (const auto& [cve, cwes] : index.assignments()) {
    json list = json::array();
    for (const CweId& cwe : cwes) list.push_back(cwe.to_string());
    assignments[cve.to_string()] = std::move(list);
  }
  json doc = {
      {"format_version", kIndexFormatVersion},
      {"retrieval_date", index.retrieval_date().to_string()},
      {"assignments", std::move(assignments)},
  };
  ScopedFileLock lock(root_ / ".lock");
  atomic_write(index_path(), gzip_compress(doc.dump()));
}

bool CacheLayout::has_index() const {
  return std::filesystem::exists(index_path());
}

CveCweIndex CacheLayout::load_index() const {
  auto bytes = read_file_if_exists(index_path());
  if (!bytes) {
    fail(ErrorKind::Schema, "index document missing: " + index_path().string() +
                                " (run 'pecwe ingest nvd' first)");
  }
  json doc;
  try {
    doc = json::parse(gzip_decompress(*bytes));
  } catch (const std::exception& e) {
    fail(ErrorKind::Schema,
         std::string("index document corrupt: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") ||
      !doc["format_version"].is_number_integer()) {
    fail(ErrorKind::Schema, "index document corrupt: no format_version");
  }
  int version = doc["format_version"].get<int>();
  if (version != kIndexFormatVersion) {
    fail(ErrorKind::Schema, "index format version " + std::to_string(version) +
                                " unsupported; this build reads version " +
                                std::to_string(kIndexFormatVersion));
  }
  if (!doc.contains("retrieval_date") || !doc.contains("assignments") ||
      !doc["assignments"].is_object()) {
    fail(ErrorKind::Schema, "index document corrupt: missing fields");
  }
  std::map<CveId, std::set<CweId>> assignments;
  for (const auto& [cve_text, cwe_list] : doc["assignments"].items()) {
    std::set<CweId> cwes;
    if (!cwe_list.is_array()) {
      fail(ErrorKind::Schema, "index document corrupt: assignment for " + cve_text);
    }
    for (const json& cwe_text : cwe_list) {
      cwes.insert(parse_cwe_id(cwe_text.get<std::string>()));
    }
    assignments.emplace(CveId::parse(cve_text), std::move(cwes));
  }
  return CveCweIndex(std::move(assignments),
                     ScoreDate::parse(doc["retrieval_date"].get<std::string>()));
}

void CacheLayout::put_catalog(const CweCatalog& catalog) {
  ScopedFileLock lock(root_ / ".lock");
  atomic_write(catalog_path(), serialize_catalog_tsv(catalog));
}

std::optional<CweCatalog> CacheLayout::load_catalog() const {
  auto bytes = read_file_if_exists(catalog_path());
  if (!bytes) return std::nullopt;
  return parse_catalog_tsv(*bytes, catalog_path().filename().string());
}

}  // namespace pecwe
