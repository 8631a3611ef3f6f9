#include "app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "fracspec/errors.hpp"

namespace fracspec::app {

namespace {

constexpr double kPanel = 240.0;
constexpr double kPad = 12.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Affine map from a bounding box into a square panel, y pointing up.
struct Frame {
  double min_x, max_y, scale, offset_x, offset_y;

  static Frame fit(const std::vector<Complex>& pts, double offset_x) {
    double lo_x = pts[0].real(), hi_x = lo_x, lo_y = pts[0].imag(), hi_y = lo_y;
    for (const Complex& p : pts) {
      lo_x = std::min(lo_x, p.real());
      hi_x = std::max(hi_x, p.real());
      lo_y = std::min(lo_y, p.imag());
      hi_y = std::max(hi_y, p.imag());
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
    const double scale = (kPanel - 2 * kPad) / span;
    const double extra_x = (kPanel - 2 * kPad - (hi_x - lo_x) * scale) / 2;
    const double extra_y = (kPanel - 2 * kPad - (hi_y - lo_y) * scale) / 2;
    return {lo_x, hi_y, scale, offset_x + kPad + extra_x, kPad + extra_y};
  }

  std::string point(Complex z) const {
    return fixed(offset_x + (z.real() - min_x) * scale) + "," + fixed(offset_y + (max_y - z.imag()) * scale);
  }
};

std::string word_label(const Word& w) {
  std::string s;
  for (int letter : w.letters()) s += std::to_string(letter) + (w.letters().size() > 1 ? "." : "");
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string header(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) +
         "\" viewBox=\"0 0 " + fixed(width) + " " + fixed(height) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string attractor_svg(const Polygon& poly, const IfsSystem& ifs, std::size_t depth, std::uint64_t budget) {
  std::uint64_t total = 0;
  for (std::size_t m = 0; m <= depth; ++m) {
    const std::uint64_t count = word_count(ifs.size(), m);
    total = count > UINT64_MAX - total ? UINT64_MAX : total + count;
  }
  if (total > budget) {
    throw ResourceError("attractor: " + std::to_string(total) + " words exceed the budget of " +
                        std::to_string(budget));
  }

  std::ostringstream out;
  out << header(kPanel * static_cast<double>(depth + 1), kPanel);
  for (std::size_t m = 0; m <= depth; ++m) {
    const Frame frame = Frame::fit(poly.vertices(), kPanel * static_cast<double>(m));
    out << "<g data-step=\"" << m << "\">\n";
    for (const Word& w : enumerate_words(ifs.size(), m, budget)) {
      const Similarity f = compose_word(ifs, w);
      out << "<polygon data-level=\"" << m << "\" data-word=\"" << word_label(w) << "\" points=\"";
      for (std::size_t j = 0; j < poly.size(); ++j) out << (j ? " " : "") << frame.point(f(poly.vertices()[j]));
      out << "\" fill=\"black\" stroke=\"none\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string chart_svg(const Polygon& poly) {
  std::ostringstream out;
  out << header(2 * kPanel, kPanel);

  const std::vector<Complex> box{{-1.0, -1.0}, {1.0, 1.0}};
  const Frame disk = Frame::fit(box, 0.0);
  out << "<circle cx=\"" << fixed(disk.offset_x + disk.scale) << "\" cy=\"" << fixed(disk.offset_y + disk.scale)
      << "\" r=\"" << fixed(disk.scale) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t j = 0; j < poly.size(); ++j) {
    const Complex e = std::polar(1.0, poly.arc_start(j));
    const std::string p = disk.point(e);
    const std::size_t comma = p.find(',');
    out << "<circle class=\"arc-endpoint\" data-arc=\"" << j + 1 << "\" cx=\"" << p.substr(0, comma) << "\" cy=\""
        << p.substr(comma + 1) << "\" r=\"3\" fill=\"red\"/>\n";
    out << "<text x=\"" << p.substr(0, comma) << "\" y=\"" << p.substr(comma + 1) << "\" font-size=\"10\">"
        << j + 1 << "</text>\n";
  }

  const Frame gen = Frame::fit(poly.vertices(), kPanel);
  out << "<polygon points=\"";
  for (std::size_t j = 0; j < poly.size(); ++j) out << (j ? " " : "") << gen.point(poly.vertices()[j]);
  out << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t j = 0; j < poly.size(); ++j) {
    const std::string p = gen.point(poly.vertices()[j]);
    const std::size_t comma = p.find(',');
    out << "<circle class=\"vertex\" data-arc=\"" << j + 1 << "\" cx=\"" << p.substr(0, comma) << "\" cy=\""
        << p.substr(comma + 1) << "\" r=\"3\" fill=\"red\"/>\n";
    out << "<text x=\"" << p.substr(0, comma) << "\" y=\"" << p.substr(comma + 1) << "\" font-size=\"10\">"
        << j + 1 << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace fracspec::app
