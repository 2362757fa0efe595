#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pecwe/dates.hpp"
#include "pecwe/feeds.hpp"
#include "pecwe/series.hpp"

namespace pecwe {

/// Display rounding used for range classification. Rounding goes through
/// the printf fixed-point text so that a value classifies exactly as it
/// prints; multiplying and rounding in binary would disagree with the
/// rendered report near decimal boundaries.
struct RoundingPolicy {
  int decimals = 2;

  long long scale() const;                 ///< 10^decimals
  long long scaled(double value) const;    ///< round(value * scale) via decimal text
  std::string display(double value) const; ///< fixed-point text, e.g. "0.91"
};

struct SeriesSummary {
  CweId cwe;
  double mean_pecwe;
  double min_pecwe;
  double max_pecwe;
  std::size_t n_points;
  std::size_t cve_count;  ///< closure size backing the series
  RangeClass range_class;
};

/// Classifies the whole range of a non-empty series. Classes are mutually
/// exclusive and total: Exploited, else Low, else High, else Variable.
RangeClass classify_range(const PecweSeries& series, const RoundingPolicy& policy = {});

SeriesSummary summarize(const PecweSeries& series, std::size_t cve_count,
                        const RoundingPolicy& policy = {});

/// Spearman rank correlation with average ranks for ties (Pearson on the
/// rank vectors). DegenerateInput when fewer than two pairs or when either
/// coordinate is constant.
double spearman_rho(std::span<const std::pair<double, double>> pairs);

/// rho between closure size and mean PECWE across CWEs.
double frequency_correlation(std::span<const SeriesSummary> summaries);

/// Fraction of scored CVEs strictly below the cutoff.
double score_fraction_below(const EpssSnapshot& snapshot, Probability cutoff);

/// Partitions a series into per-era sub-series, in era order, keeping only
/// eras that contain at least one point. A point predating every era is an
/// EraGap error.
std::vector<std::pair<EpssVersionEra, PecweSeries>> split_by_era(
    const PecweSeries& series, std::span<const EpssVersionEra> eras);

/// Change across a model-version switch: last point of one era to the first
/// point of the next non-empty era. Reported alongside patterns but never
/// classified as one, since the model changed underneath the series.
struct EraBoundaryDelta {
  int from_version;
  int to_version;
  ScoreDate prev_date;  ///< last point before the switch
  ScoreDate next_date;  ///< first point after the switch
  double delta;

  friend bool operator==(const EraBoundaryDelta&, const EraBoundaryDelta&) = default;
};

std::vector<EraBoundaryDelta> era_boundary_deltas(
    std::span<const std::pair<EpssVersionEra, PecweSeries>> eras);

}  // namespace pecwe
