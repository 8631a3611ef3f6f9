#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fracspec/linalg.hpp"

namespace fracspec {

/// Contracting similarity z -> a z + b of the complex plane.
class Similarity {
 public:
  /// Throws DomainError if |a| == 0.
  Similarity(Complex a, Complex b);

  static Similarity identity() { return Similarity(1.0, 0.0); }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  double ratio() const { return std::abs(a_); }

  Complex operator()(Complex z) const { return a_ * z + b_; }

  /// (this o inner)(z) = this(inner(z)).
  Similarity after(const Similarity& inner) const;

 private:
  Complex a_;
  Complex b_;
};

/// Open disk candidate for the open set condition.
struct DiskRegion {
  Complex center;
  double radius = 0.0;
};

/// Open polygon candidate (vertex list, either orientation).
struct PolygonRegion {
  std::vector<Complex> vertices;
};

using OpenSetCandidate = std::variant<DiskRegion, PolygonRegion>;

/// Word over the alphabet {1, ..., N}; the empty word is level 0.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  const std::vector<int>& letters() const { return letters_; }
  std::size_t level() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Concatenation u . v.
  Word operator+(const Word& other) const;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<int> letters_;
};

/// Equal-ratio system of contracting similarities.
class IfsSystem {
 public:
  /// Validates N >= 1, a common ratio c in (0, 1) with | |a_k| - c | <= 1e-12.
  explicit IfsSystem(std::vector<Similarity> maps,
                     std::optional<OpenSetCandidate> osc_candidate = std::nullopt);

  const std::vector<Similarity>& maps() const { return maps_; }
  std::size_t size() const { return maps_.size(); }
  double ratio() const { return ratio_; }
  const std::optional<OpenSetCandidate>& osc_candidate() const { return osc_candidate_; }

  /// Conjugate by the dilation z -> scale z: maps become z -> a z + scale b.
  IfsSystem rescaled(double scale) const;

 private:
  std::vector<Similarity> maps_;
  double ratio_ = 0.0;
  std::optional<OpenSetCandidate> osc_candidate_;
};

/// Default cap on the number of words produced by any enumeration.
inline constexpr std::uint64_t kDefaultWordBudget = 1'000'000;

/// F_{w_1} o ... o F_{w_m}. Throws DomainError for letters outside 1..N.
Similarity compose_word(const IfsSystem& ifs, const Word& word);

/// All N^m words of length m in lexicographic order.
/// Throws ResourceError when N^m exceeds `budget`.
std::vector<Word> enumerate_words(std::size_t n_maps, std::size_t level,
                                  std::uint64_t budget = kDefaultWordBudget);

/// N^m, saturating at UINT64_MAX.
std::uint64_t word_count(std::size_t n_maps, std::size_t level);

/// log N / log(1/c).
double hausdorff_dimension(const IfsSystem& ifs);

struct AttractorPoint {
  Complex z;
  std::size_t level = 0;
  std::size_t word_index = 0;   // lexicographic index within the level
  std::size_t sample_index = 0;  // index into the generator samples
};

/// Images F_w(x) of every generator sample x for all words with level <= depth,
/// levels ascending, words lexicographic. Throws ResourceError when the total
/// word count exceeds `budget`.
std::vector<AttractorPoint> sample_attractor(const IfsSystem& ifs,
                                             const std::vector<Complex>& generator_samples,
                                             std::size_t depth,
                                             std::uint64_t budget = kDefaultWordBudget);

struct OscReport {
  /// overlap[k][l] for k != l: F_k(V) and F_l(V) intersect (diagonal unused).
  std::vector<std::vector<bool>> pairwise_overlap;
  /// Sampled points of some F_k(V) found outside V (or exact count for disks).
  std::size_t containment_violations = 0;
  bool exact = false;  // true for disk candidates

  bool any_overlap() const;
  bool passed() const { return !any_overlap() && containment_violations == 0; }
};

/// Heuristic open set condition check against the system's candidate set.
/// Exact for disks; grid-sampled (about `samples` interior points) for
/// polygons. Throws ConfigError when no candidate is attached.
OscReport check_open_set_condition(const IfsSystem& ifs, std::size_t samples = 2000);

/// Vertices of the counterclockwise equilateral triangle of perimeter 2 pi
/// with p_1 = 0 and p_2 on the positive real axis.
std::vector<Complex> sierpinski_triangle_vertices();

/// Homotheties of ratio 1/2 about the triangle vertices, with the open
/// triangle as open set candidate.
IfsSystem sierpinski_ifs();

/// Strict point-in-polygon test (points on the boundary count as outside,
/// up to a relative tolerance).
bool point_strictly_inside(const std::vector<Complex>& polygon, Complex z);

}  // namespace fracspec
