#include "locest/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "locest/errors.hpp"

namespace locest {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_error_svg(const std::vector<BenchRow>& rows, const std::string& title) {
  std::map<std::string, std::map<std::size_t, std::vector<double>>> cells;
  for (const BenchRow& r : rows) cells[r.distribution + " / " + r.estimator][r.n].push_back(r.error);

  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (auto& [name, by_n] : cells)
    for (auto& [n, errs] : by_n) {
      std::sort(errs.begin(), errs.end());
      const std::size_t k = errs.size();
      const double med = k % 2 ? errs[k / 2] : 0.5 * errs[k / 2 - 1] + 0.5 * errs[k / 2];
      if (!(med > 0.0) || n == 0) continue;
      const double lx = std::log10(static_cast<double>(n)), ly = std::log10(med);
      curves[name].emplace_back(lx, ly);
      xlo = std::min(xlo, lx), xhi = std::max(xhi, lx), ylo = std::min(ylo, ly), yhi = std::max(yhi, ly);
    }
  if (curves.empty()) throw ParameterError("plot: no rows with positive error");
  xlo = std::floor(xlo), xhi = std::ceil(xhi), ylo = std::floor(ylo), yhi = std::ceil(yhi);
  if (xhi == xlo) xhi += 1;
  if (yhi == ylo) yhi += 1;

  const double W = 720, H = 480, L = 70, R = 230, T = 40, B = 50;
  auto px = [&](double lx) { return L + (lx - xlo) / (xhi - xlo) * (W - L - R); };
  auto py = [&](double ly) { return H - B - (ly - ylo) / (yhi - ylo) * (H - T - B); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << fmt(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
    << "</text>\n";
  for (double d = xlo; d <= xhi + 1e-9; d += 1)
    s << "<line x1=\"" << fmt(px(d)) << "\" y1=\"" << fmt(py(ylo)) << "\" x2=\"" << fmt(px(d)) << "\" y2=\""
      << fmt(py(yhi)) << "\" stroke=\"#ddd\"/>\n<text x=\"" << fmt(px(d)) << "\" y=\"" << fmt(H - B + 18)
      << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
  for (double d = ylo; d <= yhi + 1e-9; d += 1)
    s << "<line x1=\"" << fmt(px(xlo)) << "\" y1=\"" << fmt(py(d)) << "\" x2=\"" << fmt(px(xhi)) << "\" y2=\""
      << fmt(py(d)) << "\" stroke=\"#ddd\"/>\n<text x=\"" << fmt(L - 8) << "\" y=\"" << fmt(py(d) + 4)
      << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  s << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  s << "<text x=\"" << fmt(px(0.5 * (xlo + xhi))) << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">n</text>\n";

  std::size_t c = 0;
  for (const auto& [name, pts] : curves) {
    const char* color = kPalette[c % std::size(kPalette)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) s << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
    s << "\"/>\n";
    for (const auto& [x, y] : pts)
      s << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    const double ly = T + 14 + 18.0 * static_cast<double>(c);
    s << "<line x1=\"" << fmt(W - R + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(W - R + 32) << "\" y2=\""
      << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n<text x=\"" << fmt(W - R + 38)
      << "\" y=\"" << fmt(ly) << "\">" << escape(name) << "</text>\n";
    ++c;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace locest
