#include "sta/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace sta {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << fmt("%.17g", row[i]);
    }
    out << '\n';
  }
}

void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const double W = 860, H = 540, L = 70, R = 180, T = 40, B = 50;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // axes
  out << "<line x1=\"" << L << "\" y1=\"" << (H - B) << "\" x2=\"" << (W - R) << "\" y2=\""
      << (H - B) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << (H - B)
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double tx = px(fx), ty = py(fy);
    out << "<line x1=\"" << fmt("%.2f", tx) << "\" y1=\"" << (H - B) << "\" x2=\""
        << fmt("%.2f", tx) << "\" y2=\"" << (H - B + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt("%.2f", tx) << "\" y=\"" << (H - B + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt("%.6g", fx) << "</text>\n";
    out << "<line x1=\"" << (L - 5) << "\" y1=\"" << fmt("%.2f", ty) << "\" x2=\"" << L
        << "\" y2=\"" << fmt("%.2f", ty) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (L - 8) << "\" y=\"" << fmt("%.2f", ty + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt("%.6g", fy)
        << "</text>\n";
  }
  out << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"" << (H - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << (T + (H - T - B) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (T + (H - T - B) / 2) << ")\">" << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % (sizeof(palette) / sizeof(palette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const auto& sr = series[s];
    const std::size_t npt = std::min(sr.x.size(), sr.y.size());
    for (std::size_t i = 0; i < npt; ++i) {
      if (i) out << ' ';
      out << fmt("%.2f", px(sr.x[i])) << ',' << fmt("%.2f", py(sr.y[i]));
    }
    out << "\"/>\n";
    const double ly = T + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << (W - R + 12) << "\" y1=\"" << fmt("%.2f", ly + 4) << "\" x2=\""
        << (W - R + 34) << "\" y2=\"" << fmt("%.2f", ly + 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << (W - R + 40) << "\" y=\"" << fmt("%.2f", ly + 8)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << sr.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace sta
