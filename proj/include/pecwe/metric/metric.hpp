#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pecwe/catalog.hpp"
#include "pecwe/feeds.hpp"
#include "pecwe/series.hpp"

namespace pecwe {

/// The CVE population S_x of a CWE: every CVE assigned to the CWE itself or
/// to any transitive descendant in the hierarchy.
struct CveClosure {
  CweId cwe;
  std::set<CveId> members;
  std::string source_catalog_label;
};

/// Precomputes the CWE -> CVEs reverse index once so that closures for many
/// CWEs against the same catalog and index are cheap.
class ClosureBuilder {
 public:
  ClosureBuilder(const CweCatalog& catalog, const CveCweIndex& index);

  CveClosure closure(const CweId& cwe) const;

 private:
  const CweCatalog& catalog_;
  std::map<CweId, std::vector<CveId>> by_cwe_;
  std::string label_;
};

CveClosure cve_closure(const CweCatalog& catalog, const CveCweIndex& index,
                       const CweId& cwe);

/// P(at least one member CVE is exploited) assuming independence:
/// 1 - prod(1 - EPSS(y, d)) over the closure. CVEs without a published
/// score contribute a factor of exactly 1 and cannot change the result.
Probability pecwe(const CveClosure& closure, const EpssSnapshot& snapshot);

/// Same combination rule over raw scores. Accumulation runs over the scores
/// in a canonical order, so any permutation of the input yields the
/// identical double.
Probability pecwe_from_scores(std::span<const double> scores);

/// All dates in [from, to] falling on `anchor`, ascending. EPSS scores were
/// published weekly on Wednesdays before 2022, hence the default.
std::vector<ScoreDate> weekly_schedule(
    const ScoreDate& from, const ScoreDate& to,
    std::chrono::weekday anchor = std::chrono::Wednesday);

using SnapshotProvider =
    std::function<std::optional<EpssSnapshot>(const ScoreDate&)>;

/// Evaluates the metric on every schedule date with an available snapshot.
/// The closure is computed once and reused; dates whose snapshot is absent
/// are skipped, never zero-filled.
PecweSeries pecwe_series(const CweCatalog& catalog, const CveCweIndex& index,
                         const CweId& cwe, std::span<const ScoreDate> schedule,
                         const SnapshotProvider& provider,
                         std::string schedule_label);

/// pecwe_series for a precomputed closure.
PecweSeries pecwe_series_for_closure(const CveClosure& closure,
                                     std::span<const ScoreDate> schedule,
                                     const SnapshotProvider& provider,
                                     std::string schedule_label);

}  // namespace pecwe
