#pragma once

#include <map>
#include <set>
#include <string>

#include "pecwe/dates.hpp"
#include "pecwe/ids.hpp"
#include "pecwe/probability.hpp"

namespace pecwe {

/// CVE -> CWE assignments extracted from NVD records, tagged with the date
/// the feed was retrieved. Every stored CVE maps to at least one CWE;
/// records with no usable weakness entry are dropped before this point.
class CveCweIndex {
 public:
  CveCweIndex(std::map<CveId, std::set<CweId>> assignments, ScoreDate retrieval_date);

  const std::map<CveId, std::set<CweId>>& assignments() const noexcept {
    return assignments_;
  }
  const ScoreDate& retrieval_date() const noexcept { return retrieval_date_; }
  std::size_t size() const noexcept { return assignments_.size(); }

 private:
  std::map<CveId, std::set<CweId>> assignments_;
  ScoreDate retrieval_date_;
};

/// One day's published EPSS scores. Lookup is total: a CVE missing from the
/// snapshot had no published score that day and scores 0.
class EpssSnapshot {
 public:
  EpssSnapshot(ScoreDate score_date, std::string model_version,
               std::map<CveId, Probability> scores);

  const ScoreDate& score_date() const noexcept { return score_date_; }
  const std::string& model_version() const noexcept { return model_version_; }
  const std::map<CveId, Probability>& scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return scores_.size(); }

  Probability score_for(const CveId& cve) const {
    auto it = scores_.find(cve);
    return it == scores_.end() ? Probability() : it->second;
  }

 private:
  ScoreDate score_date_;
  std::string model_version_;
  std::map<CveId, Probability> scores_;
};

}  // namespace pecwe
