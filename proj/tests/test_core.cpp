#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "pecwe/catalog.hpp"
#include "pecwe/dates.hpp"
#include "pecwe/errors.hpp"
#include "pecwe/feeds.hpp"
#include "pecwe/ids.hpp"
#include "pecwe/probability.hpp"
#include "pecwe/series.hpp"

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

}  // namespace

TEST_CASE("CweId parses the accepted spellings") {
  CHECK(parse_cwe_id("CWE-79") == CweId::numbered(79));
  CHECK(parse_cwe_id("79") == CweId::numbered(79));
  CHECK(parse_cwe_id("cwe-79") == CweId::numbered(79));
  CHECK(parse_cwe_id(" CWE-79 ") == CweId::numbered(79));
  CHECK(parse_cwe_id("NVD-CWE-Other") == CweId::other());
  CHECK(parse_cwe_id("nvd-cwe-other") == CweId::other());
  CHECK(parse_cwe_id("NVD-CWE-NOINFO") == CweId::noinfo());

  CHECK(fails_with(ErrorKind::Parse, [] { parse_cwe_id("CWE-"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { parse_cwe_id("CWE-0"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { parse_cwe_id("CWE--9"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { parse_cwe_id("Improper Input Validation"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { parse_cwe_id(""); }));
}

TEST_CASE("CweId renders and orders with designators last") {
  CHECK(CweId::numbered(79).to_string() == "CWE-79");
  CHECK(CweId::other().to_string() == "NVD-CWE-Other");
  CHECK(CweId::noinfo().to_string() == "NVD-CWE-noinfo");

  CHECK(CweId::numbered(79) < CweId::numbered(502));
  CHECK(CweId::numbered(1333) < CweId::other());
  CHECK(CweId::other() < CweId::noinfo());
  CHECK(CweId::numbered(79).number() == 79);
  CHECK_FALSE(CweId::other().number().has_value());
}

TEST_CASE("CveId keeps sequence width and orders by year then sequence") {
  CHECK(CveId::parse("CVE-2021-44228").to_string() == "CVE-2021-44228");
  CHECK(CveId::parse("CVE-2014-123456").to_string() == "CVE-2014-123456");
  CHECK(CveId::parse("CVE-1999-0001").to_string() == "CVE-1999-0001");
  CHECK(CveId(1999, 1).to_string() == "CVE-1999-0001");

  CHECK(CveId::parse("CVE-2020-9999") < CveId::parse("CVE-2021-0001"));
  CHECK(CveId::parse("CVE-2021-0002") < CveId::parse("CVE-2021-10000"));

  CHECK(fails_with(ErrorKind::Parse, [] { CveId::parse("CVE-21-0001"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { CveId::parse("CVE-2021-1"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { CveId::parse("CVE-2021-0000"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { CveId::parse("GHSA-xxxx-yyyy"); }));
}

TEST_CASE("Probability rejects NaN and out-of-range values") {
  CHECK(Probability(0.0).value() == 0.0);
  CHECK(Probability(1.0).value() == 1.0);
  CHECK(Probability(0.5).value() == 0.5);

  CHECK(fails_with(ErrorKind::Parse, [] { Probability(std::nan("")); }));
  CHECK(fails_with(ErrorKind::Parse, [] { Probability(-0.001); }));
  CHECK(fails_with(ErrorKind::Parse, [] { Probability(1.001); }));

  CHECK(Probability::clamped(1.0 + 1e-16).value() == 1.0);
  CHECK(Probability::clamped(-1e-300).value() == 0.0);
  CHECK(fails_with(ErrorKind::Parse, [] { Probability::clamped(std::nan("")); }));
}

TEST_CASE("ScoreDate parses, renders, and does calendar arithmetic") {
  ScoreDate d = ScoreDate::parse("2021-04-14");
  CHECK(d.to_string() == "2021-04-14");
  CHECK(d.weekday() == std::chrono::Wednesday);
  CHECK(ScoreDate::parse("2023-10-04T00:00:00+0000") == ScoreDate(2023, 10, 4));
  CHECK(d.plus_days(7) == ScoreDate(2021, 4, 21));
  CHECK(d.plus_days(-1) == ScoreDate(2021, 4, 13));
  CHECK(ScoreDate(2021, 4, 13) < d);

  CHECK(fails_with(ErrorKind::Parse, [] { ScoreDate::parse("2021-02-30"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { ScoreDate::parse("2021-13-01"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { ScoreDate::parse("2021/04/14"); }));
  CHECK(fails_with(ErrorKind::Parse, [] { ScoreDate::parse("21-04-14"); }));
}

TEST_CASE("default eras partition the timeline at the model switch dates") {
  auto eras = default_eras();
  REQUIRE(eras.size() == 3);
  CHECK(eras[0].version == 1);
  CHECK(eras[0].start == ScoreDate(2021, 4, 14));
  CHECK(eras[1].start == ScoreDate(2022, 2, 4));
  CHECK(eras[2].start == ScoreDate(2023, 3, 7));
  CHECK_FALSE(eras[2].end.has_value());

  // Each switch date belongs to the newer era.
  CHECK(eras[0].contains(ScoreDate(2022, 2, 3)));
  CHECK_FALSE(eras[0].contains(ScoreDate(2022, 2, 4)));
  CHECK(eras[1].contains(ScoreDate(2022, 2, 4)));
  CHECK_FALSE(eras[1].contains(ScoreDate(2023, 3, 7)));
  CHECK(eras[2].contains(ScoreDate(2023, 3, 7)));
  CHECK(eras[2].contains(ScoreDate(2030, 1, 1)));
  CHECK_FALSE(eras[0].contains(ScoreDate(2021, 4, 13)));

  // No date in two eras: spot-check across the boundaries.
  for (const char* text : {"2021-04-14", "2022-02-03", "2022-02-04", "2023-03-06",
                           "2023-03-07", "2024-01-01"}) {
    ScoreDate date = ScoreDate::parse(text);
    int hits = 0;
    for (const auto& era : eras) {
      if (era.contains(date)) ++hits;
    }
    CHECK(hits == 1);
  }
}

namespace {

CweCatalog toy_catalog() {
  std::set<CweId> nodes = {CweId::numbered(100), CweId::numbered(101),
                           CweId::numbered(102), CweId::numbered(103),
                           CweId::other(), CweId::noinfo()};
  std::map<CweId, std::set<CweId>> edges = {
      {CweId::numbered(100), {CweId::numbered(101), CweId::numbered(102)}},
      {CweId::numbered(102), {CweId::numbered(103)}},
  };
  return CweCatalog::build(nodes, edges, "toy");
}

}  // namespace

TEST_CASE("CweCatalog exposes membership, children, and descendants") {
  CweCatalog cat = toy_catalog();
  CHECK(cat.contains(CweId::numbered(100)));
  CHECK(cat.contains(CweId::other()));
  CHECK_FALSE(cat.contains(CweId::numbered(79)));

  std::set<CweId> expected = {CweId::numbered(101), CweId::numbered(102),
                              CweId::numbered(103)};
  CHECK(cat.descendants(CweId::numbered(100)) == expected);
  CHECK(cat.descendants(CweId::numbered(103)).empty());
  CHECK(cat.descendants(CweId::noinfo()).empty());
  CHECK(fails_with(ErrorKind::UnknownCwe,
                   [&] { cat.descendants(CweId::numbered(79)); }));

  auto roots = cat.roots();
  CHECK(std::find(roots.begin(), roots.end(), CweId::numbered(100)) != roots.end());
  CHECK(std::find(roots.begin(), roots.end(), CweId::numbered(101)) == roots.end());
}

TEST_CASE("CweCatalog rejects structural violations") {
  std::set<CweId> nodes = {CweId::numbered(1), CweId::numbered(2), CweId::other(),
                           CweId::noinfo()};

  SUBCASE("two-node cycle") {
    std::map<CweId, std::set<CweId>> edges = {
        {CweId::numbered(1), {CweId::numbered(2)}},
        {CweId::numbered(2), {CweId::numbered(1)}},
    };
    CHECK(fails_with(ErrorKind::Catalog,
                     [&] { CweCatalog::build(nodes, edges, "bad"); }));
  }
  SUBCASE("self edge") {
    std::map<CweId, std::set<CweId>> edges = {
        {CweId::numbered(1), {CweId::numbered(1)}},
    };
    CHECK(fails_with(ErrorKind::Catalog,
                     [&] { CweCatalog::build(nodes, edges, "bad"); }));
  }
  SUBCASE("edge to non-member") {
    std::map<CweId, std::set<CweId>> edges = {
        {CweId::numbered(1), {CweId::numbered(99)}},
    };
    CHECK(fails_with(ErrorKind::Catalog,
                     [&] { CweCatalog::build(nodes, edges, "bad"); }));
  }
  SUBCASE("designator with children") {
    std::map<CweId, std::set<CweId>> edges = {
        {CweId::other(), {CweId::numbered(1)}},
    };
    CHECK(fails_with(ErrorKind::Catalog,
                     [&] { CweCatalog::build(nodes, edges, "bad"); }));
  }
  SUBCASE("missing designator") {
    std::set<CweId> no_special = {CweId::numbered(1), CweId::noinfo()};
    CHECK(fails_with(ErrorKind::Catalog,
                     [&] { CweCatalog::build(no_special, {}, "bad"); }));
  }
}

TEST_CASE("EpssSnapshot lookup is total: unpublished CVEs score zero") {
  std::map<CveId, Probability> scores = {
      {CveId::parse("CVE-2021-0001"), Probability(0.9)},
  };
  EpssSnapshot snap(ScoreDate(2023, 1, 4), "v2022.01.01", scores);
  CHECK(snap.score_for(CveId::parse("CVE-2021-0001")).value() == 0.9);
  CHECK(snap.score_for(CveId::parse("CVE-2021-9999")).value() == 0.0);
  CHECK(snap.size() == 1);

  CHECK(fails_with(ErrorKind::Parse, [&] {
    EpssSnapshot(ScoreDate(2023, 1, 4), "", scores);
  }));
}

TEST_CASE("CveCweIndex rejects empty assignment sets") {
  std::map<CveId, std::set<CweId>> ok = {
      {CveId::parse("CVE-2021-0001"), {CweId::numbered(79)}},
  };
  CHECK(CveCweIndex(ok, ScoreDate(2024, 1, 1)).size() == 1);

  std::map<CveId, std::set<CweId>> bad = {{CveId::parse("CVE-2021-0001"), {}}};
  CHECK(fails_with(ErrorKind::Schema, [&] { CveCweIndex(bad, ScoreDate(2024, 1, 1)); }));
}

TEST_CASE("PecweSeries enforces strictly increasing dates, gaps allowed") {
  CweId cwe = CweId::numbered(79);
  std::vector<SeriesPoint> gappy = {
      {ScoreDate(2023, 1, 4), Probability(0.5)},
      {ScoreDate(2023, 1, 18), Probability(0.6)},  // one missing week between
  };
  PecweSeries series(cwe, gappy, "weekly-wednesday");
  CHECK(series.size() == 2);

  std::vector<SeriesPoint> dup = {
      {ScoreDate(2023, 1, 4), Probability(0.5)},
      {ScoreDate(2023, 1, 4), Probability(0.6)},
  };
  CHECK(fails_with(ErrorKind::Parse, [&] { PecweSeries(cwe, dup, "x"); }));

  std::vector<SeriesPoint> backwards = {
      {ScoreDate(2023, 1, 11), Probability(0.5)},
      {ScoreDate(2023, 1, 4), Probability(0.6)},
  };
  CHECK(fails_with(ErrorKind::Parse, [&] { PecweSeries(cwe, backwards, "x"); }));

  CHECK(PecweSeries(cwe, {}, "x").empty());
}

TEST_CASE("enum renderings used in reports") {
  CHECK(std::string(to_string(RangeClass::Exploited)) == "Exploited");
  CHECK(std::string(to_string(RangeClass::High)) == "High");
  CHECK(std::string(to_string(RangeClass::Variable)) == "Variable");
  CHECK(std::string(to_string(RangeClass::Low)) == "Low");
  CHECK(std::string(to_string(PatternKind::StepUp)) == "StepUp");
  CHECK(std::string(to_string(PatternKind::Drop)) == "Drop");
}
