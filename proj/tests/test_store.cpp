#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "pecwe/errors.hpp"
#include "pecwe/store/cache.hpp"
#include "pecwe/util/gzip.hpp"

using namespace pecwe;

namespace {

bool fails_with(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

bool fails_mentioning(ErrorKind kind, std::string_view needle,
                      const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind &&
           std::string_view(e.what()).find(needle) != std::string_view::npos;
  }
  return false;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("pecwe_store_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

EpssSnapshot sample_snapshot(const std::string& date) {
  std::map<CveId, Probability> scores = {
      {CveId(2023, 1), Probability(0.5)},
      {CveId(2023, 2), Probability(0.001)},
  };
  return EpssSnapshot(ScoreDate::parse(date), "v2023.03.01", scores);
}

}  // namespace

TEST_CASE("cache round-trips snapshots and lists their dates") {
  TempDir dir;
  CacheLayout cache = CacheLayout::open(dir.path);

  ScoreDate date = ScoreDate::parse("2023-03-08");
  CHECK_FALSE(cache.has_snapshot(date));
  CHECK_FALSE(cache.get_snapshot(date).has_value());

  cache.put_snapshot(sample_snapshot("2023-03-08"));
  cache.put_snapshot(sample_snapshot("2023-03-15"));
  cache.put_snapshot(sample_snapshot("2023-03-01"));
  CHECK(cache.has_snapshot(date));

  auto got = cache.get_snapshot(date);
  REQUIRE(got.has_value());
  CHECK(got->score_date() == date);
  CHECK(got->model_version() == "v2023.03.01");
  CHECK(got->score_for(CveId(2023, 1)).value() == 0.5);
  CHECK(got->score_for(CveId(2023, 2)).value() == 0.001);

  auto all = cache.list_available_dates(ScoreDate::parse("2023-01-01"),
                                        ScoreDate::parse("2023-12-31"));
  REQUIRE(all.size() == 3);
  CHECK(all[0].to_string() == "2023-03-01");
  CHECK(all[2].to_string() == "2023-03-15");

  auto some = cache.list_available_dates(ScoreDate::parse("2023-03-02"),
                                         ScoreDate::parse("2023-03-08"));
  REQUIRE(some.size() == 1);
  CHECK(some[0].to_string() == "2023-03-08");
}

TEST_CASE("re-putting identical bytes is a no-op but new bytes conflict") {
  TempDir dir;
  CacheLayout cache = CacheLayout::open(dir.path);
  ScoreDate date = ScoreDate::parse("2023-03-08");

  std::string bytes = gzip_compress("#model_version:v3,score_date:2023-03-08T00:00:00+0000\ncve,epss,percentile\n");
  cache.put_snapshot_bytes(date, bytes);
  cache.put_snapshot_bytes(date, bytes);  // idempotent
  CHECK(cache.has_snapshot(date));

  std::string other = gzip_compress("#model_version:v4,score_date:2023-03-08T00:00:00+0000\ncve,epss,percentile\n");
  CHECK(fails_with(ErrorKind::Conflict,
                   [&] { cache.put_snapshot_bytes(date, other); }));
}

TEST_CASE("tampered or missing snapshot bytes raise Checksum") {
  TempDir dir;
  CacheLayout cache = CacheLayout::open(dir.path);
  ScoreDate date = ScoreDate::parse("2023-03-08");
  cache.put_snapshot(sample_snapshot("2023-03-08"));

  std::filesystem::path file = dir.path / "epss" / "epss_scores-2023-03-08.csv.gz";
  REQUIRE(std::filesystem::exists(file));

  SUBCASE("bytes modified") {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    out << "tamper";
    out.close();
    CHECK(fails_with(ErrorKind::Checksum, [&] { cache.get_snapshot(date); }));
  }
  SUBCASE("file removed while manifest entry remains") {
    std::filesystem::remove(file);
    CHECK(fails_with(ErrorKind::Checksum, [&] { cache.get_snapshot(date); }));
  }
}

TEST_CASE("a crash between snapshot and manifest writes stays recoverable") {
  TempDir dir;
  CacheLayout cache = CacheLayout::open(dir.path);
  ScoreDate date = ScoreDate::parse("2023-03-08");

  cache.before_manifest_commit = [] { throw std::runtime_error("power cut"); };
  CHECK_THROWS_AS(cache.put_snapshot(sample_snapshot("2023-03-08")),
                  std::runtime_error);

  // The snapshot file landed but was never committed, so the cache treats
  // the date as absent and a clean retry completes the write.
  CHECK_FALSE(cache.has_snapshot(date));
  CHECK_FALSE(cache.get_snapshot(date).has_value());
  CHECK(cache.list_available_dates(ScoreDate::parse("2023-01-01"),
                                   ScoreDate::parse("2023-12-31"))
            .empty());

  cache.before_manifest_commit = nullptr;
  cache.put_snapshot(sample_snapshot("2023-03-08"));
  CHECK(cache.has_snapshot(date));
  CHECK(cache.get_snapshot(date).has_value());
}

TEST_CASE("index persistence round-trips and reports version drift") {
  TempDir dir;
  CacheLayout cache = CacheLayout::open(dir.path);

  CHECK_FALSE(cache.has_index());
  CHECK(fails_mentioning(ErrorKind::Schema, "missing", [&] { cache.load_index(); }));

  std::map<CveId, std::set<CweId>> assignments = {
      {CveId(2023, 1), {CweId::numbered(79), CweId::numbered(89)}},
      {CveId(2023, 2), {CweId::noinfo()}},
  };
  cache.persist_index(CveCweIndex(assignments, ScoreDate::parse("2023-06-01")));
  CHECK(cache.has_index());

  CveCweIndex loaded = cache.load_index();
  CHECK(loaded.assignments() == assignments);
  CHECK(loaded.retrieval_date().to_string() == "2023-06-01");

  std::filesystem::path index_file = dir.path / "nvd" / "index.json.gz";
  SUBCASE("corrupt document") {
    std::ofstream(index_file, std::ios::binary) << "not gzip";
    CHECK(fails_mentioning(ErrorKind::Schema, "corrupt", [&] { cache.load_index(); }));
  }
  SUBCASE("foreign format version") {
    std::ofstream(index_file, std::ios::binary)
        << gzip_compress(R"({"format_version": 99, "retrieval_date": "2023-06-01", "assignments": {}})");
    CHECK(fails_mentioning(ErrorKind::Schema, "99", [&] { cache.load_index(); }));
    CHECK(fails_mentioning(ErrorKind::Schema, "1", [&] { cache.load_index(); }));
  }
}

TEST_CASE("catalog storage round-trips nodes, edges, and label") {
  TempDir dir;
  CacheLayout cache = CacheLayout::open(dir.path);
  CHECK_FALSE(cache.load_catalog().has_value());

  std::set<CweId> nodes = {CweId::numbered(100), CweId::numbered(101),
                           CweId::other(), CweId::noinfo()};
  std::map<CweId, std::set<CweId>> edges = {
      {CweId::numbered(100), {CweId::numbered(101)}}};
  cache.put_catalog(CweCatalog::build(nodes, edges, "view-1003-test"));

  auto loaded = cache.load_catalog();
  REQUIRE(loaded.has_value());
  CHECK(loaded->nodes() == nodes);
  CHECK(loaded->snapshot_label() == "view-1003-test");
  CHECK(loaded->children_of(CweId::numbered(100)) ==
        std::set<CweId>{CweId::numbered(101)});
}
