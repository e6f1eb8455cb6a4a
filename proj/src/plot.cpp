#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "nyspca/errors.hpp"
#include "nyspca/harness.hpp"

namespace nyspca {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 60, kRight = 150, kTop = 30, kBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_svg_plot(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                    std::size_t d) {
  std::map<Method, std::map<std::size_t, std::vector<double>>> series;
  for (const auto& r : rows)
    if (r.d == d && r.relative_error && r.method != Method::exact)
      series[r.method][r.l].push_back(*r.relative_error);
  if (series.empty()) throw InvalidParameter("no relative errors to plot for d = " + std::to_string(d));

  double lmin = 1e300, lmax = -1e300, ymin = 1e300, ymax = -1e300;
  std::map<Method, std::vector<std::pair<double, double>>> curves;
  for (const auto& [m, by_l] : series)
    for (const auto& [l, vals] : by_l) {
      const double y = median_of(vals);
      curves[m].emplace_back(static_cast<double>(l), y);
      lmin = std::min(lmin, static_cast<double>(l));
      lmax = std::max(lmax, static_cast<double>(l));
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  ymin = std::min(ymin, 1.0);
  ymax = std::max(ymax, 1.0);
  if (lmax == lmin) lmax = lmin + 1;
  if (ymax - ymin < 1e-9) ymax = ymin + 1;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double l) { return kLeft + (l - lmin) / (lmax - lmin) * pw; };
  auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"18\">relative error vs l, d = " << d << "</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\""
      << kTop + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + ph << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = ymin + (ymax - ymin) * t / 4.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">"
        << num(y) << "</text>\n";
    const double l = lmin + (lmax - lmin) * t / 4.0;
    out << "<text x=\"" << num(sx(l)) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << std::lround(l) << "</text>\n";
  }
  out << "<line x1=\"" << kLeft << "\" y1=\"" << num(sy(1.0)) << "\" x2=\"" << kLeft + pw
      << "\" y2=\"" << num(sy(1.0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">l</text>\n";

  std::size_t k = 0;
  for (const auto& [m, pts] : curves) {
    const char* colour = kPalette[static_cast<std::size_t>(m) % 8];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (const auto& [l, y] : pts) out << num(sx(l)) << ',' << num(sy(y)) << ' ';
    out << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(k++);
    out << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + pw + 32
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly << "\">" << to_string(m) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace nyspca
