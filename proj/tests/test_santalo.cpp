#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "volprod/canonical.hpp"
#include "volprod/polarity.hpp"
#include "volprod/santalo.hpp"

using namespace volprod;

namespace {

constexpr double pi = std::numbers::pi;

double polar_area_at(const ConvexPolygon& k, const Point2& z) { return area(polar(CenteredBody(k, z))); }

// Central differences of the exact polar area.
Point2 fd_gradient(const ConvexPolygon& k, const Point2& z, double h) {
  return {(polar_area_at(k, z + Point2{h, 0}) - polar_area_at(k, z - Point2{h, 0})) / (2 * h),
          (polar_area_at(k, z + Point2{0, h}) - polar_area_at(k, z - Point2{0, h})) / (2 * h)};
}

}  // namespace

TEST(Gradient, VanishesForSymmetricBodies) {
  const ConvexPolygon k = random_body(3, 6, Symmetry::central());
  EXPECT_LT(norm(polar_area_gradient(CenteredBody(k))), 1e-9);
}

TEST(Gradient, VanishesAtTriangleCentroid) {
  const ConvexPolygon t = make_polygon({{0, 0}, {2, 0.3}, {0.5, 1.7}});
  EXPECT_LT(norm(polar_area_gradient(CenteredBody(t, centroid(t)))), 1e-8);
}

TEST(Gradient, MatchesFiniteDifferences) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ConvexPolygon k = random_body(seed, 3 + seed % 10);
    const Point2 z = centroid(k) + (k[0] - centroid(k)) * 0.1;
    const Point2 g = polar_area_gradient(CenteredBody(k, z));
    const Point2 fd = fd_gradient(k, z, 1e-5);
    EXPECT_LE(norm(g - fd), 1e-5 * std::max(norm(fd), 1.0)) << seed;
  }
}

TEST(Gradient, QuadratureAgrees) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ConvexPolygon k = random_body(seed, 5);
    const CenteredBody b(k, centroid(k) + (k[1] - centroid(k)) * 0.2);
    const Point2 g = polar_area_gradient(b);
    EXPECT_LE(norm(polar_area_gradient_quadrature(b) - g), 1e-8 * norm(g)) << seed;
  }
}

TEST(Hessian, MatchesFiniteDifferencesOfGradient) {
  const ConvexPolygon k = random_body(21, 7);
  const Point2 z = centroid(k);
  const double h = 1e-6;
  const Sym2 hs = polar_area_hessian(CenteredBody(k, z));
  const Point2 gx = (polar_area_gradient(CenteredBody(k, z + Point2{h, 0})) -
                     polar_area_gradient(CenteredBody(k, z - Point2{h, 0}))) / (2 * h);
  const Point2 gy = (polar_area_gradient(CenteredBody(k, z + Point2{0, h})) -
                     polar_area_gradient(CenteredBody(k, z - Point2{0, h}))) / (2 * h);
  const double scale = std::abs(hs.xx) + std::abs(hs.yy);
  EXPECT_NEAR(hs.xx, gx.x, 1e-6 * scale);
  EXPECT_NEAR(hs.xy, gx.y, 1e-6 * scale);
  EXPECT_NEAR(hs.xy, gy.x, 1e-6 * scale);
  EXPECT_NEAR(hs.yy, gy.y, 1e-6 * scale);
}

TEST(Hessian, LowerBound) {
  // Diameter 1 and 2 bodies.
  const ConvexPolygon seg1 = make_polygon({{0, 0}, {1, 0}, {0.5, 0.2}});
  EXPECT_NEAR(polar_area_hessian_lower(seg1), 3 * pi, 1e-12);
  EXPECT_NEAR(polar_area_hessian_lower(scale(seg1, 2.0)), 3 * pi / 16, 1e-12);
  const ConvexPolygon k = random_body(5, 8);
  EXPECT_NEAR(polar_area_hessian_lower(scale(k, 3.0)), polar_area_hessian_lower(k) / 81.0, 1e-12);
  // The bound holds for the true minimum eigenvalue.
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ConvexPolygon b = random_body(seed, 3 + seed % 8);
    const CenteredBody cb(b, centroid(b));
    EXPECT_GE(polar_area_hessian(cb).min_eigenvalue(), polar_area_hessian_lower(cb)) << seed;
  }
}

TEST(SantaloPoint, SymmetricBodiesGiveCentre) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ConvexPolygon k = random_body(seed, 3 + seed % 5, Symmetry::central());
    EXPECT_LT(norm(santalo_point(k).point), 1e-7) << seed;
  }
}

TEST(SantaloPoint, TriangleGivesCentroid) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ConvexPolygon t = random_body(seed, 3);
    EXPECT_LT(distance(santalo_point(t).point, centroid(t)), 1e-7) << seed;
  }
}

TEST(SantaloPoint, TranslationEquivariant) {
  const ConvexPolygon k = random_body(31, 9);
  const Point2 t{4.0, -1.5};
  EXPECT_LT(distance(santalo_point(translate(k, t)).point, santalo_point(k).point + t), 1e-7);
}

TEST(SantaloPoint, GradientBelowTolerance) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ConvexPolygon k = random_body(seed, 3 + seed % 10);
    const SantaloResult s = santalo_point(k);
    if (s.gradient_norm > default_santalo_tolerance(k)) {
      // Accepted only at the cancellation floor of the gradient.
      EXPECT_LT(s.gradient_norm, 1e-10 * s.polar_area_at_min) << seed;
    }
    EXPECT_NEAR(s.polar_area_at_min, polar_area_at(k, s.point), 1e-12 * s.polar_area_at_min);
  }
}

TEST(SantaloPoint, FailsUnderImpossibleTolerance) {
  const ConvexPolygon k = random_body(5, 7);
  EXPECT_THROW(santalo_point(k, 1e-300, 0, centroid(k) + (k[0] - centroid(k)) * 0.3), NoConvergence);
  EXPECT_THROW(santalo_point(random_body(2, 6), -1.0), InvalidParameter);
}

TEST(CentroidOfPolar, Examples) {
  EXPECT_LE(centroid_of_polar_check(regular_ngon(5)), 1e-6);
  EXPECT_LE(centroid_of_polar_check(make_polygon({{0, 0}, {1, 0}, {0.2, 1.3}})), 1e-6);
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    EXPECT_LE(centroid_of_polar_check(random_body(seed, 4)), 1e-5) << seed;
}

TEST(SantaloPoint, ConvergesFromOffCentreStart) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ConvexPolygon t = random_body(seed, 3);
    const Point2 start = centroid(t) + (t[0] - centroid(t)) * 0.5;
    EXPECT_LT(distance(santalo_point(t, std::nullopt, 200, start).point, centroid(t)), 1e-7) << seed;
  }
  EXPECT_THROW(santalo_point(regular_ngon(4), std::nullopt, 200, Point2{3, 0}), InvalidParameter);
}
