#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pecwe/dates.hpp"

namespace pecwe {

struct SvgSeriesPoint {
  ScoreDate date;
  double value;
  bool era_boundary;  ///< first point at or after a model-version switch
};

struct SvgScatterPoint {
  std::string label;
  double x;  ///< CVE count, possibly log10-transformed by the caller
  double y;
};

/// Minimal, dependency-free SVG renderers. Output is deterministic: fixed
/// canvas, two-decimal coordinates, no timestamps.
std::string render_series_svg(const std::string& title,
                              const std::vector<SvgSeriesPoint>& points);

std::string render_scatter_svg(const std::string& title, const std::string& x_label,
                               const std::vector<SvgScatterPoint>& points);

std::string render_distribution_svg(const std::string& title,
                                    const std::vector<double>& sorted_means);

}  // namespace pecwe
