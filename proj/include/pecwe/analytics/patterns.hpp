#pragma once

#include <span>
#include <vector>

#include "pecwe/series.hpp"

namespace pecwe {

/// Tuning for the temporal pattern detectors. Thresholded change is always
/// measured on raw (unrounded) series values.
struct PatternParams {
  /// Maximum number of points an abrupt change (Jump/Drop) may span.
  int abrupt_span = 2;
  /// Minimum number of points a gradual change (StepUp/StepDown) must span.
  int min_step_span = 5;
  /// Minimum fraction of per-step moves that agree with a gradual change's
  /// direction (flat steps agree with both directions).
  double monotone_fraction = 0.8;

  void validate() const;
};

/// Finds every pattern segment in a single-era sub-series.
///
/// Jump: a net rise of at least `threshold` across at most `abrupt_span`
/// points. Overlapping or touching qualifying windows merge, and the merged
/// run is trimmed to its steepest sub-interval. Drop is the mirror image.
///
/// StepUp: at least `min_step_span` points with a net rise of at least
/// `threshold`, no single step of `threshold` or more in either direction,
/// and at least `monotone_fraction` of the steps non-decreasing. Maximal
/// under those constraints, scanning left to right. StepDown is the mirror.
///
/// Stable: a maximal run of at least two points whose values all fit inside
/// a band narrower than `threshold`.
///
/// Segments of the same kind never overlap; segments of different kinds
/// may. Results are ordered by (start, end, kind).
std::vector<PatternSegment> detect_patterns(const PecweSeries& series,
                                            double threshold = 0.1,
                                            const PatternParams& params = {});

}  // namespace pecwe
