#include "pecwe/cli/svg.hpp"

#include <algorithm>
#include <sstream>

#include "pecwe/errors.hpp"
#include "pecwe/util/numfmt.hpp"

namespace pecwe {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 50.0;

std::string fmt(double v) { return fixed_decimals(v, 2); }

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
         "viewBox=\"0 0 800 400\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n";
}

void axes(std::ostringstream& out, const std::string& x_lo, const std::string& x_hi,
          const std::string& y_lo, const std::string& y_hi) {
  double x0 = kMargin, x1 = kWidth - kMargin;
  double y0 = kHeight - kMargin, y1 = kMargin;
  out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1)
      << "\" y2=\"" << fmt(y0) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0)
      << "\" y2=\"" << fmt(y1) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << fmt(x0) << "\" y=\"" << fmt(y0 + 20)
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << x_lo << "</text>\n";
  out << "<text x=\"" << fmt(x1) << "\" y=\"" << fmt(y0 + 20)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << x_hi
      << "</text>\n";
  out << "<text x=\"" << fmt(x0 - 5) << "\" y=\"" << fmt(y0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << y_lo
      << "</text>\n";
  out << "<text x=\"" << fmt(x0 - 5) << "\" y=\"" << fmt(y1)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << y_hi
      << "</text>\n";
}

double scale_x(double t, double t_lo, double t_hi) {
  double span = t_hi - t_lo;
  double frac = span > 0.0 ? (t - t_lo) / span : 0.5;
  return kMargin + frac * (kWidth - 2 * kMargin);
}

double scale_y01(double v) {
  return (kHeight - kMargin) - v * (kHeight - 2 * kMargin);
}

}  // namespace

std::string render_series_svg(const std::string& title,
                              const std::vector<SvgSeriesPoint>& points) {
  if (points.empty()) {
    fail(ErrorKind::EmptySeries, "nothing to plot");
  }
  std::ostringstream out;
  open_svg(out, title);
  double t_lo = static_cast<double>(points.front().date.days().time_since_epoch().count());
  double t_hi = static_cast<double>(points.back().date.days().time_since_epoch().count());
  axes(out, points.front().date.to_string(), points.back().date.to_string(), "0.00",
       "1.00");
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    double t = static_cast<double>(points[i].date.days().time_since_epoch().count());
    if (i) out << ' ';
    out << fmt(scale_x(t, t_lo, t_hi)) << ',' << fmt(scale_y01(points[i].value));
  }
  out << "\"/>\n";
  for (const SvgSeriesPoint& p : points) {
    if (!p.era_boundary) continue;
    double t = static_cast<double>(p.date.days().time_since_epoch().count());
    out << "<circle cx=\"" << fmt(scale_x(t, t_lo, t_hi)) << "\" cy=\""
        << fmt(scale_y01(p.value)) << "\" r=\"4\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_scatter_svg(const std::string& title, const std::string& x_label,
                               const std::vector<SvgScatterPoint>& points) {
  if (points.empty()) {
    fail(ErrorKind::EmptySeries, "nothing to plot");
  }
  double x_lo = points.front().x, x_hi = points.front().x;
  for (const SvgScatterPoint& p : points) {
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
  }
  std::ostringstream out;
  open_svg(out, title);
  axes(out, x_label + " " + float_repr(x_lo), x_label + " " + float_repr(x_hi), "0.00",
       "1.00");
  for (const SvgScatterPoint& p : points) {
    out << "<circle cx=\"" << fmt(scale_x(p.x, x_lo, x_hi)) << "\" cy=\""
        << fmt(scale_y01(p.y)) << "\" r=\"2.5\" fill=\"black\" fill-opacity=\"0.6\">"
        << "<title>" << p.label << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_distribution_svg(const std::string& title,
                                    const std::vector<double>& sorted_means) {
  if (sorted_means.empty()) {
    fail(ErrorKind::EmptySeries, "nothing to plot");
  }
  std::ostringstream out;
  open_svg(out, title);
  axes(out, "1", std::to_string(sorted_means.size()), "0.00", "1.00");
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < sorted_means.size(); ++i) {
    if (i) out << ' ';
    out << fmt(scale_x(static_cast<double>(i), 0.0,
                       static_cast<double>(sorted_means.size() - 1)))
        << ',' << fmt(scale_y01(sorted_means[i]));
  }
  out << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace pecwe
