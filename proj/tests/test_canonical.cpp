#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "volprod/canonical.hpp"
#include "volprod/polarity.hpp"
#include "volprod/random.hpp"

using namespace volprod;

namespace {

constexpr double pi = std::numbers::pi;

const ConvexPolygon& big_square() {
  static const ConvexPolygon k = make_polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  return k;
}

// Closed form of the bumped n-gon product, written out independently.
double bumped_reference(int n, double e) {
  const double s = std::sin(pi / n), cot = std::cos(pi / n) / s;
  return n * n * s * s * (1.0 + (e - e * e * cot * cot) / (1.0 + e));
}

// Best o-symmetric parallelogram with vertices on the boundary, over a grid
// of boundary directions.
double parallelogram_grid_oracle(const ConvexPolygon& k, int steps) {
  auto radial = [&](double a) {
    const Point2 u = unit_vector(a);
    double t = 1e300;
    for (std::size_t i = 0; i < k.size(); ++i) {
      const HalfPlane h = k.edge_half_plane(i);
      const double d = dot(h.normal, u);
      if (d > 0) t = std::min(t, h.offset / d);
    }
    return u * t;
  };
  double best = 0.0;
  for (int i = 0; i < steps; ++i)
    for (int j = i + 1; j < steps; ++j) {
      const Point2 a = radial(pi * i / steps), b = radial(pi * j / steps);
      best = std::max(best, 2.0 * std::abs(cross(a, b)));
    }
  return best;
}

// max over directions of h_K(u) / h_M(u) for an o-centred pair, the
// support-function containment ratio.
double support_ratio(const ConvexPolygon& k, const ConvexPolygon& m, int steps = 4096) {
  double r = 0.0;
  for (int i = 0; i < steps; ++i) {
    const Point2 u = unit_vector(2 * pi * i / steps);
    r = std::max(r, support(k, u) / support(m, u));
  }
  return r;
}

}  // namespace

TEST(RegularNgon, Examples) {
  EXPECT_TRUE(same_vertex_set(regular_ngon(4), make_polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), 1e-15));
  EXPECT_NEAR(area(regular_ngon(3)), 3.0 * std::sqrt(3.0) / 4.0, 1e-15);
  const ConvexPolygon r = regular_ngon(7, 1.3, 0.4);
  EXPECT_TRUE(same_vertex_set(apply_map(r, LinearMap2::rotation(2 * pi / 7)), r, 1e-12));
  EXPECT_THROW(regular_ngon(2), InvalidParameter);
}

TEST(BumpedNgon, ProductClosedForm) {
  EXPECT_NEAR(volume_product(CenteredBody(bumped_ngon(4, 0.01))).product, 8.0 + 8.0 * (0.01 - 0.0001) / 1.01, 1e-12);
  EXPECT_NEAR(8.0 + 8.0 * (0.01 - 0.0001) / 1.01, 8.0784158415841584, 1e-15);
  for (int n = 3; n <= 12; ++n)
    for (double e : {1e-4, 1e-3, 1e-2}) {
      const double p = volume_product(CenteredBody(bumped_ngon(n, e))).product;
      EXPECT_NEAR(p / bumped_reference(n, e), 1.0, 1e-9) << n << " " << e;
      EXPECT_NEAR(bumped_ngon_product(n, e) / bumped_reference(n, e), 1.0, 1e-14);
    }
}

TEST(BumpedNgon, TriangleEggleston) {
  for (double e : {1e-4, 1e-3, 1e-2, 1e-1}) {
    const double ref = 6.0 * (9 + 15 * e + 3 * e * e - 3 * e * e * e) / ((3 + e) * (3 + e));
    EXPECT_NEAR(eggleston_product(bumped_ngon(3, e)) / ref, 1.0, 1e-9) << e;
    EXPECT_NEAR(bumped_triangle_eggleston(e) / ref, 1.0, 1e-15);
  }
}

TEST(BumpedNgon, ZeroBumpIsRegular) {
  for (int n = 3; n <= 8; ++n) EXPECT_TRUE(same_vertex_set(bumped_ngon(n, 0.0), regular_ngon(n), 1e-12)) << n;
}

TEST(BumpedNgon, Domain) {
  EXPECT_NEAR(bumped_ngon_max_eps(4), std::sqrt(2.0) - 1.0, 1e-15);
  EXPECT_THROW(bumped_ngon(4, -0.1), InvalidParameter);
  EXPECT_THROW(bumped_ngon(12, 0.1), InvalidParameter);
  EXPECT_NO_THROW(bumped_ngon(4, bumped_ngon_max_eps(4)));
}

TEST(RandomBody, DeterministicAndSymmetric) {
  EXPECT_EQ(random_body(42, 7), random_body(42, 7));
  EXPECT_FALSE(random_body(42, 7) == random_body(43, 7));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EXPECT_TRUE(is_centrally_symmetric(random_body(seed, 5, Symmetry::central()))) << seed;
    EXPECT_TRUE(is_nfold_symmetric(random_body(seed, 3, Symmetry::nfold(6)), 6)) << seed;
  }
}

TEST(Rng, SplitmixAndMersenneStreams) {
  // splitmix64 reference values for state 0 (first output of the stream).
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng c(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const int k = c.integer(3, 5);
    EXPECT_GE(k, 3);
    EXPECT_LE(k, 5);
  }
  EXPECT_NE(item_seed(7, 0), item_seed(7, 1));
}

TEST(InscribedParallelogram, Examples) {
  EXPECT_TRUE(same_vertex_set(max_area_inscribed_symmetric_parallelogram(big_square()), big_square(), 1e-15));
  const ConvexPolygon hex = regular_ngon(6);
  const double got = area(max_area_inscribed_symmetric_parallelogram(hex));
  EXPECT_NEAR(got, std::sqrt(3.0), 1e-12);
  EXPECT_LE(std::abs(got - parallelogram_grid_oracle(hex, 1800)), 1e-3 * got);
  EXPECT_THROW(max_area_inscribed_symmetric_parallelogram(regular_ngon(3)), NotSymmetric);
}

TEST(InscribedParallelogram, AffineRatioInvariant) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ConvexPolygon k = random_body(seed, 5, Symmetry::central());
    const LinearMap2 a = LinearMap2::linear(1.3, 0.4 * seed / 10.0, -0.2, 0.8);
    const double r0 = area(max_area_inscribed_symmetric_parallelogram(k)) / area(k);
    const ConvexPolygon ka = apply_map(k, a);
    const double r1 = area(max_area_inscribed_symmetric_parallelogram(ka)) / area(ka);
    EXPECT_NEAR(r0, r1, 1e-6) << seed;
  }
}

TEST(InscribedTriangle, Examples) {
  const ConvexPolygon t = make_polygon({{0, 0}, {3, 1}, {1, 2}});
  EXPECT_TRUE(same_vertex_set(max_area_inscribed_triangle(t), t, 1e-15));
  EXPECT_NEAR(area(max_area_inscribed_triangle(big_square())), 2.0, 1e-15);
  EXPECT_TRUE(max_area_inscribed_triangle_detail(big_square()).tie);
  const ConvexPolygon hex = regular_ngon(6);
  EXPECT_NEAR(area(max_area_inscribed_triangle(hex)), 3.0 * std::sqrt(3.0) / 4.0, 1e-12);
}

TEST(InscribedTriangle, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ConvexPolygon k = random_body(seed, 4 + seed % 8);
    double best = 0.0;
    for (const auto& a : k.vertices())
      for (const auto& b : k.vertices())
        for (const auto& c : k.vertices()) best = std::max(best, 0.5 * std::abs(cross(b - a, c - a)));
    EXPECT_NEAR(area(max_area_inscribed_triangle(k)), best, 1e-14) << seed;
  }
}

TEST(Sandwich, ModelsThemselves) {
  EXPECT_NEAR(sandwich(big_square(), Model::parallelogram()).ratio(), 1.0, 1e-9);
  EXPECT_NEAR(sandwich(make_polygon({{0, 0}, {3, 1}, {1, 2}}), Model::triangle()).ratio(), 1.0, 1e-9);
  for (int n = 3; n <= 9; ++n) EXPECT_NEAR(sandwich(regular_ngon(n, 2.0, 0.3), Model::regular(n)).ratio(), 1.0, 1e-9);
}

TEST(Sandwich, ContainmentsHold) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ConvexPolygon k = random_body(seed, 3 + seed % 8);
    const SandwichCertificate c = sandwich(k, Model::triangle());
    const double t = 1e-9 * diameter(k);
    EXPECT_TRUE(contains(k, c.inner, t)) << seed;
    EXPECT_TRUE(contains(c.outer, k, t)) << seed;
    EXPECT_GE(c.ratio(), 1.0 - 1e-12);
  }
}

TEST(Sandwich, BumpedSquareAgainstSupportRatio) {
  for (double e : {1e-3, 1e-2, 5e-2}) {
    const ConvexPolygon k = bumped_ngon(4, e);
    const double r = sandwich(k, Model::parallelogram()).ratio();
    // The inscribed square is R_4 itself, the best o-symmetric outer
    // homothet of R_4 has ratio max h_K / h_{R_4}.
    const double oracle = support_ratio(k, regular_ngon(4));
    EXPECT_NEAR(r, oracle, 1e-6) << e;
    EXPECT_LE(r, 1.0 + 2.0 * e);
  }
}

TEST(PerturbedModel, CloseToModel) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ConvexPolygon k = perturbed_model(seed, Model::parallelogram(), 1e-3);
    EXPECT_TRUE(is_centrally_symmetric(k, centroid(k))) << seed;
    EXPECT_LE(sandwich(translate(k, -centroid(k)), Model::parallelogram()).ratio(), 1.0 + 1e-2) << seed;
    const ConvexPolygon r = perturbed_model(seed, Model::regular(5), 1e-3);
    EXPECT_TRUE(is_nfold_symmetric(translate(r, -centroid(r)), 5)) << seed;
  }
}
