#include "pecwe/analytics/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pecwe/errors.hpp"
#include "pecwe/util/numfmt.hpp"

namespace pecwe {

long long RoundingPolicy::scale() const {
  long long s = 1;
  for (int i = 0; i < decimals; ++i) s *= 10;
  return s;
}

std::string RoundingPolicy::display(double value) const {
  if (decimals < 0 || decimals > 12) {
    fail(ErrorKind::Usage, "rounding decimals must be in [0,12]");
  }
  return fixed_decimals(value, decimals);
}

long long RoundingPolicy::scaled(double value) const {
  std::string text = display(value);
  // "0.91" -> 91, "1.00" -> 100: strip the point, parse the digits.
  long long out = 0;
  bool negative = false;
  for (char c : text) {
    if (c == '-') {
      negative = true;
    } else if (c != '.') {
      out = out * 10 + (c - '0');
    }
  }
  return negative ? -out : out;
}

RangeClass classify_range(const PecweSeries& series, const RoundingPolicy& policy) {
  if (series.empty()) {
    fail(ErrorKind::EmptySeries, "cannot classify an empty series for " +
                                     series.cwe().to_string());
  }
  const long long scale = policy.scale();
  bool all_one = true, all_low = true, all_high = true;
  for (const SeriesPoint& p : series.points()) {
    long long r = policy.scaled(p.value.value());
    if (r != scale) all_one = false;
    if (10 * r > scale) all_low = false;   // r > 0.10
    if (10 * r <= 9 * scale) all_high = false;  // r <= 0.90
  }
  if (all_one) return RangeClass::Exploited;
  if (all_low) return RangeClass::Low;
  if (all_high) return RangeClass::High;
  return RangeClass::Variable;
}

SeriesSummary summarize(const PecweSeries& series, std::size_t cve_count,
                        const RoundingPolicy& policy) {
  if (series.empty()) {
    fail(ErrorKind::EmptySeries, "cannot summarize an empty series for " +
                                     series.cwe().to_string());
  }
  double sum = 0.0, lo = 1.0, hi = 0.0;
  for (const SeriesPoint& p : series.points()) {
    double v = p.value.value();
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {series.cwe(),
          sum / static_cast<double>(series.size()),
          lo,
          hi,
          series.size(),
          cve_count,
          classify_range(series, policy)};
}

namespace {

// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    fail(ErrorKind::DegenerateInput, "correlation undefined for a constant coordinate");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

double spearman_rho(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 2) {
    fail(ErrorKind::DegenerateInput, "need at least two pairs, got " +
                                         std::to_string(pairs.size()));
  }
  std::vector<double> xs, ys;
  xs.reserve(pairs.size());
  ys.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    if (std::isnan(x) || std::isnan(y)) {
      fail(ErrorKind::DegenerateInput, "correlation input contains NaN");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  std::vector<double> rx = average_ranks(xs);
  std::vector<double> ry = average_ranks(ys);
  return pearson(rx, ry);
}

double frequency_correlation(std::span<const SeriesSummary> summaries) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(summaries.size());
  for (const SeriesSummary& s : summaries) {
    pairs.emplace_back(static_cast<double>(s.cve_count), s.mean_pecwe);
  }
  return spearman_rho(pairs);
}

double score_fraction_below(const EpssSnapshot& snapshot, Probability cutoff) {
  if (snapshot.size() == 0) {
    fail(ErrorKind::EmptySnapshot, "snapshot " + snapshot.score_date().to_string() +
                                       " has no scores");
  }
  std::size_t below = 0;
  for (const auto& [cve, score] : snapshot.scores()) {
    (void)cve;
    if (score.value() < cutoff.value()) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(snapshot.size());
}

std::vector<std::pair<EpssVersionEra, PecweSeries>> split_by_era(
    const PecweSeries& series, std::span<const EpssVersionEra> eras) {
  std::vector<std::vector<SeriesPoint>> buckets(eras.size());
  for (const SeriesPoint& p : series.points()) {
    bool placed = false;
    for (std::size_t i = 0; i < eras.size(); ++i) {
      if (eras[i].contains(p.date)) {
        buckets[i].push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed) {
      fail(ErrorKind::EraGap, "point at " + p.date.to_string() +
                                  " is not covered by any version era");
    }
  }
  std::vector<std::pair<EpssVersionEra, PecweSeries>> out;
  for (std::size_t i = 0; i < eras.size(); ++i) {
    if (buckets[i].empty()) continue;
    out.emplace_back(eras[i], PecweSeries(series.cwe(), std::move(buckets[i]),
                                          series.schedule_label()));
  }
  return out;
}

std::vector<EraBoundaryDelta> era_boundary_deltas(
    std::span<const std::pair<EpssVersionEra, PecweSeries>> eras) {
  std::vector<EraBoundaryDelta> out;
  for (std::size_t i = 1; i < eras.size(); ++i) {
    const PecweSeries& prev = eras[i - 1].second;
    const PecweSeries& next = eras[i].second;
    const SeriesPoint& last = prev.points().back();
    const SeriesPoint& first = next.points().front();
    out.push_back({eras[i - 1].first.version, eras[i].first.version, last.date,
                   first.date, first.value.value() - last.value.value()});
  }
  return out;
}

}  // namespace pecwe
