#include "tamarkin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tamarkin {

namespace {

constexpr double kPanel = 240.0;
constexpr double kMargin = 30.0;
constexpr double kGutter = 18.0;

}  // namespace

std::string persistence_svg(const GradedBarcode& barcode) {
  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const auto& [degree, bars] : barcode.bars()) {
    for (const auto& bar : bars) {
      const double top = bar.infinite() ? bar.birth : bar.death;
      if (first) {
        lo = bar.birth;
        hi = top;
        first = false;
      }
      lo = std::min(lo, bar.birth);
      hi = std::max(hi, top);
    }
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const auto degrees = barcode.degree_list();
  const std::size_t panels = std::max<std::size_t>(1, degrees.size());
  const double width = panels * (kPanel + 2 * kMargin);
  const double height = kPanel + 2 * kMargin + kGutter;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t p = 0; p < degrees.size(); ++p) {
    const double x0 = p * (kPanel + 2 * kMargin) + kMargin;
    const double y0 = kMargin + kGutter;  // top of the finite region
    const auto sx = [&](double v) { return x0 + (v - lo) / (hi - lo) * kPanel; };
    const auto sy = [&](double v) { return y0 + kPanel - (v - lo) / (hi - lo) * kPanel; };
    svg << "<g>\n";
    svg << "<text x=\"" << x0 << "\" y=\"" << kMargin - 12 << "\">H" << degrees[p] << "</text>\n";
    svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << kPanel << "\" height=\"" << kPanel
        << "\" fill=\"none\" stroke=\"#999\"/>\n";
    svg << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(hi)
        << "\" stroke=\"#bbb\"/>\n";
    svg << "<line x1=\"" << x0 << "\" y1=\"" << kMargin << "\" x2=\"" << x0 + kPanel << "\" y2=\"" << kMargin
        << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& bar : barcode.in_degree(degrees[p])) {
      const double y = bar.infinite() ? kMargin : sy(bar.death);
      svg << "<circle cx=\"" << sx(bar.birth) << "\" cy=\"" << y << "\" r=\"3\" fill=\""
          << (bar.infinite() ? "#c0392b" : "#2c3e50") << "\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tamarkin
