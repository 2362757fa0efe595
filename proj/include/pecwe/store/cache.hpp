#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pecwe/catalog.hpp"
#include "pecwe/feeds.hpp"

namespace pecwe {

/// Flat-file feed cache rooted at one directory:
///
///   <root>/epss/epss_scores-<date>.csv.gz   original gzip bytes per day
///   <root>/epss/manifest.tsv                "<date>\t<sha256>" per snapshot
///   <root>/nvd/index.json.gz                versioned CVE->CWE index
///   <root>/catalog/view1003.tsv             normalized catalog snapshot
///
/// Writes go through a temp file and rename, and the manifest is committed
/// only after its snapshot file, so a crash at any point leaves a readable
/// cache. A file lock serializes writers; reads verify the manifest digest
/// before trusting cached bytes.
class CacheLayout {
 public:
  static CacheLayout open(const std::filesystem::path& root);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Stores one day's snapshot bytes exactly as fetched. Storing the same
  /// bytes again is a no-op; different bytes for an already-cached date is
  /// a Conflict error.
  void put_snapshot_bytes(const ScoreDate& date, std::string_view gzip_bytes);

  /// Serializes and stores a snapshot (deterministic bytes, so idempotent).
  void put_snapshot(const EpssSnapshot& snapshot);

  bool has_snapshot(const ScoreDate& date) const;

  /// Cached snapshot for the date, or nullopt if absent. Bytes whose
  /// digest no longer matches the manifest raise Checksum.
  std::optional<EpssSnapshot> get_snapshot(const ScoreDate& date) const;

  /// Manifest dates within [from, to], ascending.
  std::vector<ScoreDate> list_available_dates(const ScoreDate& from,
                                              const ScoreDate& to) const;

  void persist_index(const CveCweIndex& index);

  /// Schema errors distinguish a missing document from a corrupt one and
  /// name both versions on a format mismatch.
  CveCweIndex load_index() const;
  bool has_index() const;

  void put_catalog(const CweCatalog& catalog);
  std::optional<CweCatalog> load_catalog() const;

  /// Test seam: runs after a snapshot file lands but before its manifest
  /// entry commits. A throw here simulates a crash between the two writes.
  std::function<void()> before_manifest_commit;

 private:
  explicit CacheLayout(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path epss_dir() const { return root_ / "epss"; }
  std::filesystem::path manifest_path() const { return epss_dir() / "manifest.tsv"; }
  std::filesystem::path snapshot_path(const ScoreDate& date) const;
  std::filesystem::path index_path() const { return root_ / "nvd" / "index.json.gz"; }
  std::filesystem::path catalog_path() const { return root_ / "catalog" / "view1003.tsv"; }

  std::map<ScoreDate, std::string> read_manifest() const;
  void write_manifest(const std::map<ScoreDate, std::string>& manifest) const;

  std::filesystem::path root_;
};

}  // namespace pecwe
