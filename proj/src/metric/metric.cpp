#include "pecwe/metric/metric.hpp"

#include <algorithm>
#include <cmath>

#include "pecwe/errors.hpp"

namespace pecwe {

// Scores this close to 1 make the complement product indistinguishable from
// 0 in double precision; the metric is pinned to exactly 1 there.
static constexpr double kCertainty = 1.0 - 1e-12;

ClosureBuilder::ClosureBuilder(const CweCatalog& catalog, const CveCweIndex& index)
    : catalog_(catalog), label_(catalog.snapshot_label()) {
  for (const auto& [cve, cwes] : index.assignments()) {
    for (const CweId& cwe : cwes) {
      by_cwe_[cwe].push_back(cve);
    }
  }
}

CveClosure ClosureBuilder::closure(const CweId& cwe) const {
  if (!catalog_.contains(cwe)) {
    fail(ErrorKind::UnknownCwe, cwe.to_string() + " is not in catalog " + label_);
  }
  std::set<CweId> family = catalog_.descendants(cwe);
  family.insert(cwe);

  CveClosure out{cwe, {}, label_};
  for (const CweId& member : family) {
    auto it = by_cwe_.find(member);
    if (it == by_cwe_.end()) continue;
    out.members.insert(it->second.begin(), it->second.end());
  }
  return out;
}

CveClosure cve_closure(const CweCatalog& catalog, const CveCweIndex& index,
                       const CweId& cwe) {
  return ClosureBuilder(catalog, index).closure(cwe);
}

Probability pecwe_from_scores(std::span<const double> scores) {
  // Zero scores are skipped outright: a factor of exactly 1 cannot move the
  // product, and skipping keeps the result bit-identical to the zero-free
  // input. Sorting ascending fixes the accumulation order (permutation
  // invariance) and adds the small log terms first.
  std::vector<double> nonzero;
  nonzero.reserve(scores.size());
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      fail(ErrorKind::Parse, "score out of [0,1]");
    }
    if (s >= kCertainty) return Probability(1.0);
    if (s > 0.0) nonzero.push_back(s);
  }
  if (nonzero.empty()) return Probability(0.0);
  if (nonzero.size() == 1) return Probability(nonzero.front());

  std::sort(nonzero.begin(), nonzero.end());
  double log_miss = 0.0;  // log of prod(1 - s)
  for (double s : nonzero) {
    log_miss += std::log1p(-s);
  }
  return Probability::clamped(-std::expm1(log_miss));
}

Probability pecwe(const CveClosure& closure, const EpssSnapshot& snapshot) {
  std::vector<double> scores;
  scores.reserve(closure.members.size());
  // std::set iteration is already the canonical order.
  for (const CveId& cve : closure.members) {
    scores.push_back(snapshot.score_for(cve).value());
  }
  return pecwe_from_scores(scores);
}

std::vector<ScoreDate> weekly_schedule(const ScoreDate& from, const ScoreDate& to,
                                       std::chrono::weekday anchor) {
  std::vector<ScoreDate> out;
  if (to < from) return out;
  unsigned ahead =
      (anchor - from.weekday()).count();  // days until the first anchor weekday
  ScoreDate d = from.plus_days(static_cast<int>(ahead));
  while (d <= to) {
    out.push_back(d);
    d = d.plus_days(7);
  }
  return out;
}

PecweSeries pecwe_series_for_closure(const CveClosure& closure,
                                     std::span<const ScoreDate> schedule,
                                     const SnapshotProvider& provider,
                                     std::string schedule_label) {
  std::vector<SeriesPoint> points;
  for (const ScoreDate& date : schedule) {
    std::optional<EpssSnapshot> snapshot = provider(date);
    if (!snapshot) continue;
    points.push_back({date, pecwe(closure, *snapshot)});
  }
  return PecweSeries(closure.cwe, std::move(points), std::move(schedule_label));
}

PecweSeries pecwe_series(const CweCatalog& catalog, const CveCweIndex& index,
                         const CweId& cwe, std::span<const ScoreDate> schedule,
                         const SnapshotProvider& provider, std::string schedule_label) {
  return pecwe_series_for_closure(cve_closure(catalog, index, cwe), schedule,
                                  provider, std::move(schedule_label));
}

}  // namespace pecwe
