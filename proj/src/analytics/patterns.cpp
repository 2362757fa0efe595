#include "pecwe/analytics/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "pecwe/errors.hpp"

namespace pecwe {

void PatternParams::validate() const {
  if (abrupt_span < 1) {
    fail(ErrorKind::Usage, "abrupt_span must be >= 1");
  }
  if (min_step_span < 2) {
    fail(ErrorKind::Usage, "min_step_span must be >= 2");
  }
  if (!(monotone_fraction >= 0.0 && monotone_fraction <= 1.0)) {
    fail(ErrorKind::Usage, "monotone_fraction must be in [0,1]");
  }
}

namespace {

struct Window {
  std::size_t a;
  std::size_t b;
};

// Abrupt detector for one direction: dir = +1 finds Jumps, -1 finds Drops.
// Qualifying windows merge transitively when they share a point; the merged
// run is then trimmed to the sub-interval with the steepest directed change
// (earliest end, then earliest start, on ties). The trimmed change is at
// least as large as any single qualifying window's, so it stays above the
// threshold.
void detect_abrupt(const std::vector<double>& v, double threshold, int span,
                   int dir, PatternKind kind, const PecweSeries& series,
                   std::vector<PatternSegment>& out) {
  const std::size_t n = v.size();
  std::vector<Window> windows;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    std::size_t b_max = std::min(n - 1, a + static_cast<std::size_t>(span) - 1);
    for (std::size_t b = a + 1; b <= b_max; ++b) {
      if (dir * (v[b] - v[a]) >= threshold) windows.push_back({a, b});
    }
  }
  if (windows.empty()) return;

  std::sort(windows.begin(), windows.end(), [](const Window& x, const Window& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  std::vector<Window> components;
  Window current = windows.front();
  for (std::size_t i = 1; i < windows.size(); ++i) {
    const Window& w = windows[i];
    if (w.a <= current.b) {
      current.b = std::max(current.b, w.b);
    } else {
      components.push_back(current);
      current = w;
    }
  }
  components.push_back(current);

  for (const Window& c : components) {
    // Steepest directed sub-interval, one pass tracking the running
    // extremum. Ties resolve to the earliest end, then the earliest start;
    // both updates below are strict, which makes the choice symmetric under
    // value reflection.
    std::size_t best_a = c.a, best_b = c.b;
    double best = -1.0;
    std::size_t arg_extreme = c.a;  // index of running min (dir=+1) or max (dir=-1)
    for (std::size_t b = c.a + 1; b <= c.b; ++b) {
      double change = dir * (v[b] - v[arg_extreme]);
      if (change > best) {
        best = change;
        best_a = arg_extreme;
        best_b = b;
      }
      if (dir > 0 ? v[b] < v[arg_extreme] : v[b] > v[arg_extreme]) {
        arg_extreme = b;
      }
    }
    out.push_back({kind, series.points()[best_a].date, series.points()[best_b].date,
                   v[best_b] - v[best_a]});
  }
}

// Gradual detector for one direction: dir = +1 finds StepUps, -1 StepDowns.
// Greedy left-to-right: from each start, take the farthest end that still
// satisfies every constraint, then resume after it.
void detect_step(const std::vector<double>& v, double threshold,
                 const PatternParams& params, int dir, PatternKind kind,
                 const PecweSeries& series, std::vector<PatternSegment>& out) {
  const std::size_t n = v.size();
  std::size_t a = 0;
  while (a + 1 < n) {
    std::size_t best_b = 0;
    bool found = false;
    std::size_t agree = 0, steps = 0;
    for (std::size_t b = a + 1; b < n; ++b) {
      double step = v[b] - v[b - 1];
      if (std::fabs(step) >= threshold) break;  // an abrupt move ends any gradual run
      ++steps;
      if (dir * step >= 0.0) ++agree;
      bool long_enough =
          b - a + 1 >= static_cast<std::size_t>(params.min_step_span);
      bool net_enough = dir * (v[b] - v[a]) >= threshold;
      bool monotone_enough = static_cast<double>(agree) >=
                             params.monotone_fraction * static_cast<double>(steps);
      if (long_enough && net_enough && monotone_enough) {
        best_b = b;
        found = true;
      }
    }
    if (found) {
      out.push_back({kind, series.points()[a].date, series.points()[best_b].date,
                     v[best_b] - v[a]});
      a = best_b + 1;
    } else {
      ++a;
    }
  }
}

// Stable detector: maximal runs whose values fit in a band narrower than
// the threshold.
void detect_stable(const std::vector<double>& v, double threshold,
                   const PecweSeries& series, std::vector<PatternSegment>& out) {
  const std::size_t n = v.size();
  std::size_t a = 0;
  while (a + 1 < n) {
    double lo = v[a], hi = v[a];
    std::size_t b = a;
    while (b + 1 < n) {
      double nlo = std::min(lo, v[b + 1]);
      double nhi = std::max(hi, v[b + 1]);
      if (nhi - nlo >= threshold) break;
      lo = nlo;
      hi = nhi;
      ++b;
    }
    if (b > a) {
      out.push_back({PatternKind::Stable, series.points()[a].date,
                     series.points()[b].date, v[b] - v[a]});
      a = b + 1;
    } else {
      ++a;
    }
  }
}

}  // namespace

std::vector<PatternSegment> detect_patterns(const PecweSeries& series,
                                            double threshold,
                                            const PatternParams& params) {
  params.validate();
  if (!(threshold > 0.0) || std::isnan(threshold)) {
    fail(ErrorKind::Usage, "pattern threshold must be positive");
  }
  if (series.size() < 2) {
    fail(ErrorKind::TooShort, "pattern detection needs at least two points, got " +
                                  std::to_string(series.size()));
  }

  std::vector<double> v;
  v.reserve(series.size());
  for (const SeriesPoint& p : series.points()) v.push_back(p.value.value());

  std::vector<PatternSegment> out;
  detect_abrupt(v, threshold, params.abrupt_span, +1, PatternKind::Jump, series, out);
  detect_abrupt(v, threshold, params.abrupt_span, -1, PatternKind::Drop, series, out);
  detect_step(v, threshold, params, +1, PatternKind::StepUp, series, out);
  detect_step(v, threshold, params, -1, PatternKind::StepDown, series, out);
  detect_stable(v, threshold, series, out);

  std::sort(out.begin(), out.end(), [](const PatternSegment& x, const PatternSegment& y) {
    return std::tie(x.start, x.end, x.kind) < std::tie(y.start, y.end, y.kind);
  });
  return out;
}

}  // namespace pecwe
