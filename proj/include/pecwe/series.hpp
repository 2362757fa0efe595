#pragma once

#include <string>
#include <vector>

#include "pecwe/dates.hpp"
#include "pecwe/ids.hpp"
#include "pecwe/probability.hpp"

namespace pecwe {

/// Classification of a PECWE range per the two-decimal display rounding:
/// Exploited when every point rounds to 1.00, Low when every point rounds
/// to at most 0.10, High when every point rounds above 0.90, Variable
/// otherwise.
enum class RangeClass { Exploited, High, Variable, Low };

const char* to_string(RangeClass c);

/// Temporal pattern kinds found inside a single model-version era.
enum class PatternKind { Drop, Jump, Stable, StepUp, StepDown };

const char* to_string(PatternKind k);

struct PatternSegment {
  PatternKind kind;
  ScoreDate start;
  ScoreDate end;
  double delta;  ///< value at end minus value at start

  friend bool operator==(const PatternSegment&, const PatternSegment&) = default;
};

struct SeriesPoint {
  ScoreDate date;
  Probability value;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// A PECWE time series for one CWE: points at strictly increasing dates.
/// Gaps are legal; a schedule date without a snapshot simply has no point.
class PecweSeries {
 public:
  PecweSeries(CweId cwe, std::vector<SeriesPoint> points, std::string schedule_label);

  const CweId& cwe() const noexcept { return cwe_; }
  const std::vector<SeriesPoint>& points() const noexcept { return points_; }
  const std::string& schedule_label() const noexcept { return schedule_label_; }

  bool empty() const noexcept { return points_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  CweId cwe_;
  std::vector<SeriesPoint> points_;
  std::string schedule_label_;
};

}  // namespace pecwe
