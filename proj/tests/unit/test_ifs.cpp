#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fracspec/errors.hpp"
#include "fracspec/ifs.hpp"

using namespace fracspec;

namespace {

bool same_map(const Similarity& f, const Similarity& g, double tol) {
  return std::abs(f.a() - g.a()) <= tol && std::abs(f.b() - g.b()) <= tol;
}

Word random_word(Rng& rng, std::size_t n, std::size_t max_len) {
  std::vector<int> letters(rng.bits() % (max_len + 1));
  for (int& l : letters) l = 1 + static_cast<int>(rng.bits() % n);
  return Word(letters);
}

}  // namespace

TEST_CASE("similarity construction rejects degenerate maps") {
  CHECK_THROWS_AS(Similarity(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(IfsSystem({}), DomainError);
  CHECK_THROWS_AS(IfsSystem({Similarity(0.5, 0.0), Similarity(0.4, 1.0)}), DomainError);
  CHECK_THROWS_AS(IfsSystem({Similarity(1.0, 0.0)}), DomainError);
}

TEST_CASE("compose_word") {
  const IfsSystem ifs = sierpinski_ifs();
  const auto p = sierpinski_triangle_vertices();

  CHECK(same_map(compose_word(ifs, Word{}), Similarity::identity(), 0.0));

  // Hand composition of z -> (z + p_k)/2 twice: z/4 + 3 p_k / 4.
  for (int k = 1; k <= 3; ++k) {
    const Similarity f = compose_word(ifs, Word({k, k}));
    CHECK(std::abs(f.a() - Complex(0.25, 0.0)) < 1e-15);
    CHECK(std::abs(f.b() - 0.75 * p[k - 1]) < 1e-14);
  }
  // (1, 2): z -> ((z + p2)/2 + p1)/2
  const Similarity f12 = compose_word(ifs, Word({1, 2}));
  CHECK(std::abs(f12(Complex(0.3, 0.7)) - ((Complex(0.3, 0.7) + p[1]) / 2.0 + p[0]) / 2.0) < 1e-14);

  CHECK_THROWS_AS(compose_word(ifs, Word({1, 4})), DomainError);
  CHECK_THROWS_AS(compose_word(ifs, Word({0})), DomainError);
}

TEST_CASE("scale law and associativity on random words") {
  const IfsSystem ifs({Similarity(std::polar(0.6, 0.4), Complex(0.1, 0.2)),
                       Similarity(std::polar(0.6, -1.1), Complex(-0.5, 0.3)),
                       Similarity(std::polar(0.6, 2.0), Complex(0.9, -0.7))});
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Word u = random_word(rng, 3, 6);
    const Word v = random_word(rng, 3, 6);
    const Similarity fu = compose_word(ifs, u);
    const Similarity fv = compose_word(ifs, v);
    CHECK(same_map(compose_word(ifs, u + v), fu.after(fv), 1e-12));
    const double expected = std::pow(0.6, double(u.level()));
    CHECK(std::abs(fu.ratio() - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("enumerate_words") {
  CHECK(enumerate_words(3, 0) == std::vector<Word>{Word{}});
  CHECK(enumerate_words(2, 2) ==
        std::vector<Word>{Word({1, 1}), Word({1, 2}), Word({2, 1}), Word({2, 2})});
  CHECK(enumerate_words(3, 4).size() == 81);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 0; m <= 5; ++m) {
      const auto words = enumerate_words(n, m);
      CHECK(words.size() == word_count(n, m));
      CHECK(std::is_sorted(words.begin(), words.end()));
      CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
    }
  }
  CHECK_THROWS_AS(enumerate_words(3, 20), ResourceError);
  CHECK_THROWS_AS(enumerate_words(2, 5, 31), ResourceError);
}

TEST_CASE("hausdorff dimension") {
  CHECK(hausdorff_dimension(sierpinski_ifs()) == doctest::Approx(1.5849625007).epsilon(1e-10));
  CHECK(hausdorff_dimension(sierpinski_ifs()) == std::log(3.0) / std::log(2.0));
  CHECK(hausdorff_dimension(IfsSystem({Similarity(0.3, 0.0)})) == 0.0);
  const double third = 1.0 / 3.0;
  CHECK(hausdorff_dimension(IfsSystem({Similarity(third, 0.0), Similarity(third, 1.0), Similarity(third, 2.0)})) ==
        doctest::Approx(1.0).epsilon(1e-15));

  // Monotone in N (fixed c) and in c (fixed N).
  auto system = [](std::size_t n, double c) {
    std::vector<Similarity> maps;
    for (std::size_t k = 0; k < n; ++k) maps.emplace_back(c, double(k));
    return IfsSystem(maps);
  };
  for (double c : {0.2, 0.4, 0.6, 0.8}) {
    for (std::size_t n = 1; n < 6; ++n) CHECK(hausdorff_dimension(system(n + 1, c)) > hausdorff_dimension(system(n, c)));
  }
  for (std::size_t n = 2; n < 6; ++n) {
    for (double c = 0.1; c < 0.85; c += 0.1) {
      CHECK(hausdorff_dimension(system(n, c + 0.1)) > hausdorff_dimension(system(n, c)));
    }
  }
}

TEST_CASE("sample_attractor") {
  const IfsSystem ifs = sierpinski_ifs();
  const auto p = sierpinski_triangle_vertices();

  const auto depth0 = sample_attractor(ifs, p, 0);
  REQUIRE(depth0.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(depth0[i].z == p[i]);

  const auto depth1 = sample_attractor(ifs, p, 1);
  REQUIRE(depth1.size() == 3 + 9);
  for (std::size_t i = 3; i < depth1.size(); ++i) {
    const AttractorPoint& pt = depth1[i];
    CHECK(pt.level == 1);
    // Image of vertex j under the homothety about p_k: (p_j + p_k)/2.
    const Complex expected = 0.5 * (p[pt.sample_index] + p[pt.word_index]);
    CHECK(std::abs(pt.z - expected) < 1e-14);
    // Lies in the closed half-scale corner triangle at p_k.
    std::vector<Complex> corner;
    for (const Complex& v : p) corner.push_back(0.5 * (v + p[pt.word_index]));
    CHECK((point_strictly_inside(corner, pt.z) || std::abs(pt.z - corner[pt.sample_index]) < 1e-14));
  }

  // Every point of deeper levels stays in the closed hull of the triangle.
  const auto depth4 = sample_attractor(ifs, p, 4);
  CHECK(depth4.size() == (1 + 3 + 9 + 27 + 81) * 3);
  std::vector<Complex> grown;
  const Complex centroid = (p[0] + p[1] + p[2]) / 3.0;
  for (const Complex& v : p) grown.push_back(centroid + (1.0 + 1e-6) * (v - centroid));
  for (const AttractorPoint& pt : depth4) CHECK(point_strictly_inside(grown, pt.z));

  CHECK_THROWS_AS(sample_attractor(ifs, p, 30), ResourceError);
}

TEST_CASE("open set condition heuristics") {
  SUBCASE("sierpinski with the open triangle") {
    const OscReport report = check_open_set_condition(sierpinski_ifs());
    CHECK_FALSE(report.any_overlap());
    CHECK(report.containment_violations == 0);
    CHECK(report.passed());
  }
  SUBCASE("identical maps overlap") {
    const IfsSystem twin({Similarity(0.5, 0.0), Similarity(0.5, 0.0)}, DiskRegion{0.0, 1.0});
    CHECK(check_open_set_condition(twin).any_overlap());
    const IfsSystem twin_poly({Similarity(0.5, 0.0), Similarity(0.5, 0.0)},
                              PolygonRegion{{Complex(-1, -1), Complex(1, -1), Complex(1, 1), Complex(-1, 1)}});
    CHECK(check_open_set_condition(twin_poly).any_overlap());
  }
  SUBCASE("disk arithmetic") {
    // Images have radius 0.6 r; with r = 1 and centers 0 and 1 they intersect.
    const IfsSystem ifs({Similarity(0.6, 0.0), Similarity(0.6, 1.0)}, DiskRegion{0.0, 1.0});
    const OscReport report = check_open_set_condition(ifs);
    CHECK(report.exact);
    CHECK(report.pairwise_overlap[0][1]);
    CHECK(report.pairwise_overlap[1][0]);
  }
  SUBCASE("disjoint disks") {
    const IfsSystem ifs({Similarity(0.3, -0.6), Similarity(0.3, 0.6)}, DiskRegion{0.0, 1.0});
    CHECK(check_open_set_condition(ifs).passed());
  }
  SUBCASE("missing candidate") {
    CHECK_THROWS_AS(check_open_set_condition(IfsSystem({Similarity(0.5, 0.0)})), ConfigError);
  }
}

TEST_CASE("sierpinski system") {
  const IfsSystem ifs = sierpinski_ifs();
  const auto p = sierpinski_triangle_vertices();
  CHECK(ifs.size() == 3);
  CHECK(ifs.ratio() == 0.5);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(ifs.maps()[k](p[k]) - p[k]) < 1e-15);
  double perimeter = 0.0;
  for (std::size_t k = 0; k < 3; ++k) perimeter += std::abs(p[(k + 1) % 3] - p[k]);
  CHECK(perimeter == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
  for (std::size_t m = 0; m < 8; ++m) {
    std::vector<int> letters(m, 2);
    CHECK(compose_word(ifs, Word(letters)).ratio() == std::ldexp(1.0, -static_cast<int>(m)));
  }
}

TEST_CASE("rescaling conjugates the system") {
  const IfsSystem ifs = sierpinski_ifs();
  const IfsSystem big = ifs.rescaled(3.0);
  const Complex z(0.2, -0.4);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(big.maps()[k](3.0 * z) - 3.0 * ifs.maps()[k](z)) < 1e-14);
}
