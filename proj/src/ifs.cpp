#include "fracspec/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracspec/errors.hpp"

namespace fracspec {

Similarity::Similarity(Complex a, Complex b) : a_(a), b_(b) {
  if (!(std::abs(a) > 0.0)) throw DomainError("Similarity: scale coefficient must be nonzero");
}

Similarity Similarity::after(const Similarity& inner) const {
  return Similarity(a_ * inner.a_, a_ * inner.b_ + b_);
}

Word Word::operator+(const Word& other) const {
  std::vector<int> joined = letters_;
  joined.insert(joined.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(joined));
}

IfsSystem::IfsSystem(std::vector<Similarity> maps, std::optional<OpenSetCandidate> osc_candidate)
    : maps_(std::move(maps)), osc_candidate_(std::move(osc_candidate)) {
  if (maps_.empty()) throw DomainError("IfsSystem: need at least one map");
  ratio_ = maps_.front().ratio();
  if (!(ratio_ > 0.0 && ratio_ < 1.0)) {
    throw DomainError("IfsSystem: common ratio must lie in (0, 1), got " + std::to_string(ratio_));
  }
  for (const Similarity& f : maps_) {
    if (std::abs(f.ratio() - ratio_) > 1e-12) {
      throw DomainError("IfsSystem: maps must share the same ratio");
    }
  }
}

IfsSystem IfsSystem::rescaled(double scale) const {
  std::vector<Similarity> maps;
  maps.reserve(maps_.size());
  for (const Similarity& f : maps_) maps.emplace_back(f.a(), scale * f.b());
  std::optional<OpenSetCandidate> candidate;
  if (osc_candidate_) {
    candidate = std::visit(
        [scale](const auto& region) -> OpenSetCandidate {
          using T = std::decay_t<decltype(region)>;
          if constexpr (std::is_same_v<T, DiskRegion>) {
            return DiskRegion{scale * region.center, scale * region.radius};
          } else {
            PolygonRegion out;
            for (Complex v : region.vertices) out.vertices.push_back(scale * v);
            return out;
          }
        },
        *osc_candidate_);
  }
  return IfsSystem(std::move(maps), std::move(candidate));
}

Similarity compose_word(const IfsSystem& ifs, const Word& word) {
  Similarity acc = Similarity::identity();
  const int n = static_cast<int>(ifs.size());
  for (int letter : word.letters()) {
    if (letter < 1 || letter > n) {
      throw DomainError("compose_word: letter " + std::to_string(letter) + " outside 1.." +
                        std::to_string(n));
    }
    acc = acc.after(ifs.maps()[static_cast<std::size_t>(letter - 1)]);
  }
  return acc;
}

std::uint64_t word_count(std::size_t n_maps, std::size_t level) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < level; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / n_maps) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= n_maps;
  }
  return count;
}

std::vector<Word> enumerate_words(std::size_t n_maps, std::size_t level, std::uint64_t budget) {
  if (n_maps == 0) throw DomainError("enumerate_words: alphabet must be non-empty");
  const std::uint64_t count = word_count(n_maps, level);
  if (count > budget) {
    throw ResourceError("enumerate_words: " + std::to_string(n_maps) + "^" +
                        std::to_string(level) + " words exceed budget " + std::to_string(budget));
  }
  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(count));
  std::vector<int> letters(level, 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    words.emplace_back(letters);
    // Odometer increment, last letter fastest.
    for (std::size_t pos = level; pos-- > 0;) {
      if (letters[pos] < static_cast<int>(n_maps)) {
        ++letters[pos];
        break;
      }
      letters[pos] = 1;
    }
  }
  return words;
}

double hausdorff_dimension(const IfsSystem& ifs) {
  return std::log(static_cast<double>(ifs.size())) / std::log(1.0 / ifs.ratio());
}

std::vector<AttractorPoint> sample_attractor(const IfsSystem& ifs,
                                             const std::vector<Complex>& generator_samples,
                                             std::size_t depth, std::uint64_t budget) {
  std::uint64_t total = 0;
  for (std::size_t m = 0; m <= depth; ++m) {
    const std::uint64_t count = word_count(ifs.size(), m);
    if (count > budget || total > budget - count) {
      throw ResourceError("sample_attractor: word budget exceeded at level " + std::to_string(m));
    }
    total += count;
  }
  std::vector<AttractorPoint> points;
  points.reserve(static_cast<std::size_t>(total) * generator_samples.size());
  for (std::size_t m = 0; m <= depth; ++m) {
    const std::vector<Word> words = enumerate_words(ifs.size(), m, budget);
    for (std::size_t w = 0; w < words.size(); ++w) {
      const Similarity f = compose_word(ifs, words[w]);
      for (std::size_t i = 0; i < generator_samples.size(); ++i) {
        points.push_back({f(generator_samples[i]), m, w, i});
      }
    }
  }
  return points;
}

namespace {

enum class Location { Inside, Boundary, Outside };

double polygon_diameter(const std::vector<Complex>& poly) {
  double d = 0.0;
  for (const Complex& a : poly) {
    for (const Complex& b : poly) d = std::max(d, std::abs(a - b));
  }
  return d;
}

double distance_to_segment(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

Location locate(const std::vector<Complex>& poly, Complex z, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (distance_to_segment(z, poly[i], poly[(i + 1) % n]) <= tol) return Location::Boundary;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex& a = poly[i];
    const Complex& b = poly[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
      if (z.real() < x) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

std::vector<Complex> map_polygon(const Similarity& f, const std::vector<Complex>& poly) {
  std::vector<Complex> out;
  out.reserve(poly.size());
  for (const Complex& v : poly) out.push_back(f(v));
  return out;
}

OscReport check_disk(const IfsSystem& ifs, const DiskRegion& disk) {
  const std::size_t n = ifs.size();
  OscReport report;
  report.exact = true;
  report.pairwise_overlap.assign(n, std::vector<bool>(n, false));
  const double r = ifs.ratio() * disk.radius;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ck = ifs.maps()[k](disk.center);
    if (std::abs(ck - disk.center) + r > disk.radius * (1.0 + 1e-12)) ++report.containment_violations;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      const Complex cl = ifs.maps()[l](disk.center);
      report.pairwise_overlap[k][l] = std::abs(ck - cl) < 2.0 * r;
    }
  }
  return report;
}

OscReport check_polygon(const IfsSystem& ifs, const PolygonRegion& region, std::size_t samples) {
  const std::vector<Complex>& poly = region.vertices;
  if (poly.size() < 3) throw ConfigError("open set candidate polygon needs >= 3 vertices");
  const std::size_t n = ifs.size();
  OscReport report;
  report.pairwise_overlap.assign(n, std::vector<bool>(n, false));

  double xmin = poly[0].real(), xmax = xmin, ymin = poly[0].imag(), ymax = ymin;
  for (const Complex& v : poly) {
    xmin = std::min(xmin, v.real());
    xmax = std::max(xmax, v.real());
    ymin = std::min(ymin, v.imag());
    ymax = std::max(ymax, v.imag());
  }
  const double tol = 1e-9 * polygon_diameter(poly);
  const std::size_t side = std::max<std::size_t>(
      4, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples)))));
  std::vector<Complex> interior;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      // Cell centers avoid landing exactly on axis-aligned edges.
      const Complex z(xmin + (xmax - xmin) * (i + 0.5) / side,
                      ymin + (ymax - ymin) * (j + 0.5) / side);
      if (locate(poly, z, tol) == Location::Inside) interior.push_back(z);
    }
  }

  std::vector<std::vector<Complex>> images;
  for (const Similarity& f : ifs.maps()) images.push_back(map_polygon(f, poly));

  for (std::size_t k = 0; k < n; ++k) {
    const Similarity& f = ifs.maps()[k];
    for (const Complex& x : interior) {
      const Complex y = f(x);
      if (locate(poly, y, tol) == Location::Outside) ++report.containment_violations;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == k || report.pairwise_overlap[k][l]) continue;
        if (locate(images[l], y, tol) == Location::Inside) {
          report.pairwise_overlap[k][l] = true;
          report.pairwise_overlap[l][k] = true;
        }
      }
    }
  }
  return report;
}

}  // namespace

bool OscReport::any_overlap() const {
  for (const auto& row : pairwise_overlap) {
    for (bool b : row) {
      if (b) return true;
    }
  }
  return false;
}

OscReport check_open_set_condition(const IfsSystem& ifs, std::size_t samples) {
  if (!ifs.osc_candidate()) {
    throw ConfigError("check_open_set_condition: no open set candidate configured");
  }
  return std::visit(
      [&](const auto& region) -> OscReport {
        using T = std::decay_t<decltype(region)>;
        if constexpr (std::is_same_v<T, DiskRegion>) {
          return check_disk(ifs, region);
        } else {
          return check_polygon(ifs, region, samples);
        }
      },
      *ifs.osc_candidate());
}

bool point_strictly_inside(const std::vector<Complex>& polygon, Complex z) {
  return locate(polygon, z, 1e-9 * polygon_diameter(polygon)) == Location::Inside;
}

std::vector<Complex> sierpinski_triangle_vertices() {
  const double side = 2.0 * std::numbers::pi / 3.0;
  return {Complex(0.0, 0.0), Complex(side, 0.0), side * std::polar(1.0, std::numbers::pi / 3.0)};
}

IfsSystem sierpinski_ifs() {
  const std::vector<Complex> p = sierpinski_triangle_vertices();
  std::vector<Similarity> maps;
  for (const Complex& v : p) maps.emplace_back(0.5, 0.5 * v);
  return IfsSystem(std::move(maps), PolygonRegion{p});
}

}  // namespace fracspec
