#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace compkern::cli {
namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Pads a degenerate range so the axis still has width.
std::pair<double, double> padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double d = std::max(1.0, std::abs(lo)) * 0.5;
    return {lo - d, hi + d};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void header(std::ostringstream& s, int w, int h, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" viewBox=\"0 0 " << w << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(title) << "</text>\n";
}

}  // namespace

std::string bar_chart_svg(const std::vector<std::string>& labels, const std::vector<double>& values,
                          const std::string& title) {
  const int left = 60, right = 20, top = 30, bottom = 90;
  const int bar = 24, gap = 8;
  const int plot_w = std::max(200, static_cast<int>(values.size()) * (bar + gap) + gap);
  const int plot_h = 240;
  const int w = left + plot_w + right, h = top + plot_h + bottom;
  double lo = 0.0, hi = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::tie(lo, hi) = padded(lo, hi);
  auto ypos = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

  std::ostringstream s;
  header(s, w, h, title);
  const double zero = ypos(0.0);
  s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
    << top + plot_h << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << num(zero) << "\" x2=\"" << left + plot_w
    << "\" y2=\"" << num(zero) << "\" stroke=\"black\"/>\n";
  for (double tick : {lo, 0.0, hi}) {
    s << "<text x=\"" << left - 4 << "\" y=\"" << num(ypos(tick) + 4)
      << "\" text-anchor=\"end\">" << num(tick) << "</text>\n";
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::isfinite(values[i]) ? values[i] : 0.0;
    const int x = left + gap + static_cast<int>(i) * (bar + gap);
    const double y0 = std::min(ypos(v), zero);
    const double y1 = std::max(ypos(v), zero);
    s << "<rect x=\"" << x << "\" y=\"" << num(y0) << "\" width=\"" << bar << "\" height=\""
      << num(y1 - y0) << "\" fill=\"" << (v >= 0.0 ? kPalette[0] : kPalette[1]) << "\"><title>"
      << escape(i < labels.size() ? labels[i] : "") << ": " << num(values[i])
      << "</title></rect>\n";
    const int lx = x + bar / 2;
    const int ly = top + plot_h + 12;
    s << "<text x=\"" << lx << "\" y=\"" << ly << "\" text-anchor=\"end\" transform=\"rotate(-60 "
      << lx << ' ' << ly << ")\">" << escape(i < labels.size() ? labels[i] : "") << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string scatter_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<std::size_t>& groups, const std::string& title,
                        const std::string& x_label, const std::string& y_label) {
  const int left = 70, right = 20, top = 30, bottom = 50;
  const int plot_w = 400, plot_h = 400;
  const int w = left + plot_w + right, h = top + plot_h + bottom;
  auto range = [](const std::vector<double>& v) {
    double lo = INFINITY, hi = -INFINITY;
    for (double e : v) {
      if (std::isfinite(e)) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
      }
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    return padded(lo, hi);
  };
  const auto [xlo, xhi] = range(xs);
  const auto [ylo, yhi] = range(ys);
  auto px = [&](double v) { return left + plot_w * (v - xlo) / (xhi - xlo); };
  auto py = [&](double v) { return top + plot_h * (yhi - v) / (yhi - ylo); };

  std::ostringstream s;
  header(s, w, h, title);
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
    << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << left << "\" y=\"" << top + plot_h + 16 << "\">" << num(xlo) << "</text>\n";
  s << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 16
    << "\" text-anchor=\"end\">" << num(xhi) << "</text>\n";
  s << "<text x=\"" << left - 4 << "\" y=\"" << top + plot_h << "\" text-anchor=\"end\">"
    << num(ylo) << "</text>\n";
  s << "<text x=\"" << left - 4 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << num(yhi)
    << "</text>\n";
  s << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">"
    << escape(x_label) << "</text>\n";
  const int ylx = 16, yly = top + plot_h / 2;
  s << "<text x=\"" << ylx << "\" y=\"" << yly << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
    << ylx << ' ' << yly << ")\">" << escape(y_label) << "</text>\n";
  const std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    const std::size_t g = i < groups.size() ? groups[i] : 0;
    s << "<circle cx=\"" << num(px(xs[i])) << "\" cy=\"" << num(py(ys[i]))
      << "\" r=\"3\" fill=\"" << kPalette[g % kPalette.size()] << "\" fill-opacity=\"0.8\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace compkern::cli
