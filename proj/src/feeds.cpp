#include "pecwe/feeds.hpp"

#include "pecwe/errors.hpp"

namespace pecwe {

CveCweIndex::CveCweIndex(std::map<CveId, std::set<CweId>> assignments,
                         ScoreDate retrieval_date)
    : assignments_(std::move(assignments)), retrieval_date_(retrieval_date) {
  for (const auto& [cve, cwes] : assignments_) {
    if (cwes.empty()) {
      fail(ErrorKind::Schema, cve.to_string() + " has an empty CWE assignment set");
    }
  }
}

EpssSnapshot::EpssSnapshot(ScoreDate score_date, std::string model_version,
                           std::map<CveId, Probability> scores)
    : score_date_(score_date),
      model_version_(std::move(model_version)),
      scores_(std::move(scores)) {
  if (model_version_.empty()) {
    fail(ErrorKind::Parse, "snapshot model version must be non-empty");
  }
}

}  // namespace pecwe
