#include "starcx/svg.hpp"

#include "starcx/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace starcx {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

std::string fixed2(double v) {
  std::array<char, 48> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
  if (ec != std::errc{}) throw std::runtime_error("svg: number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

Range range_of(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

}  // namespace

std::string scatter_svg(std::span<const double> x, std::span<const double> y, const std::optional<FitResult>& fit,
                        const ScatterStyle& style) {
  if (x.size() != y.size()) throw std::invalid_argument("scatter_svg: columns differ in length");
  if (x.empty()) throw std::invalid_argument("scatter_svg: no data");
  const Range rx = range_of(x);
  const Range ry = range_of(y);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - rx.lo) / rx.span() * plot_w; };
  auto py = [&](double v) { return kTop + plot_h - (v - ry.lo) / ry.span() * plot_h; };
  auto inside_y = [&](double v) { return std::clamp(v, ry.lo, ry.hi); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  const std::string x0 = fixed2(kLeft);
  const std::string x1 = fixed2(kLeft + plot_w);
  const std::string y0 = fixed2(kTop + plot_h);
  const std::string y1 = fixed2(kTop);
  os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";

  // Min/max ticks with labels.
  for (double v : {rx.lo, rx.hi}) {
    const std::string p = fixed2(px(v));
    os << "<line x1=\"" << p << "\" y1=\"" << y0 << "\" x2=\"" << p << "\" y2=\"" << fixed2(kTop + plot_h + 6)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << p << "\" y=\"" << fixed2(kTop + plot_h + 22) << "\" font-size=\"12\" text-anchor=\"middle\">"
       << format_real(v) << "</text>\n";
  }
  for (double v : {ry.lo, ry.hi}) {
    const std::string p = fixed2(py(v));
    os << "<line x1=\"" << fixed2(kLeft - 6) << "\" y1=\"" << p << "\" x2=\"" << x0 << "\" y2=\"" << p
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed2(kLeft - 10) << "\" y=\"" << p << "\" font-size=\"12\" text-anchor=\"end\">"
       << format_real(v) << "</text>\n";
  }
  os << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"" << fixed2(kHeight - 15)
     << "\" font-size=\"14\" text-anchor=\"middle\">" << escape(style.x_label) << "</text>\n";
  os << "<text x=\"20\" y=\"" << fixed2(kTop + plot_h / 2) << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << fixed2(kTop + plot_h / 2) << ")\">" << escape(style.y_label) << "</text>\n";

  os << "<g fill=\"steelblue\">\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << "<circle cx=\"" << fixed2(px(x[i])) << "\" cy=\"" << fixed2(py(y[i])) << "\" r=\"2\"/>\n";
  }
  os << "</g>\n";

  if (fit) {
    // Clip the fitted segment to the plotted y range as well.
    double xa = rx.lo;
    double xb = rx.hi;
    if (fit->slope != 0.0) {
      const double xs1 = (ry.lo - fit->intercept) / fit->slope;
      const double xs2 = (ry.hi - fit->intercept) / fit->slope;
      xa = std::max(xa, std::min(xs1, xs2));
      xb = std::min(xb, std::max(xs1, xs2));
    }
    if (xa <= xb) {
      os << "<line x1=\"" << fixed2(px(xa)) << "\" y1=\"" << fixed2(py(inside_y(fit->slope * xa + fit->intercept)))
         << "\" x2=\"" << fixed2(px(xb)) << "\" y2=\"" << fixed2(py(inside_y(fit->slope * xb + fit->intercept)))
         << "\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    }
  }
  if (style.identity_line) {
    const double lo = std::max(rx.lo, ry.lo);
    const double hi = std::min(rx.hi, ry.hi);
    if (lo <= hi) {
      os << "<line x1=\"" << fixed2(px(lo)) << "\" y1=\"" << fixed2(py(lo)) << "\" x2=\"" << fixed2(px(hi)) << "\" y2=\""
         << fixed2(py(hi)) << "\" stroke=\"green\" stroke-width=\"1.5\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace starcx
