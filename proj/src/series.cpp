#include "pecwe/series.hpp"

#include "pecwe/errors.hpp"

namespace pecwe {

const char* to_string(RangeClass c) {
  switch (c) {
    case RangeClass::Exploited: return "Exploited";
    case RangeClass::High: return "High";
    case RangeClass::Variable: return "Variable";
    case RangeClass::Low: return "Low";
  }
  return "unknown";
}

const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::Drop: return "Drop";
    case PatternKind::Jump: return "Jump";
    case PatternKind::Stable: return "Stable";
    case PatternKind::StepUp: return "StepUp";
    case PatternKind::StepDown: return "StepDown";
  }
  return "unknown";
}

PecweSeries::PecweSeries(CweId cwe, std::vector<SeriesPoint> points,
                         std::string schedule_label)
    : cwe_(cwe), points_(std::move(points)), schedule_label_(std::move(schedule_label)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].date < points_[i].date)) {
      fail(ErrorKind::Parse, "series dates must be strictly increasing at " +
                                 points_[i].date.to_string());
    }
  }
}

}  // namespace pecwe
