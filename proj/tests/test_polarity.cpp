#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "volprod/canonical.hpp"
#include "volprod/polarity.hpp"
#include "volprod/quadrature.hpp"
#include "volprod/random.hpp"

using namespace volprod;

namespace {

constexpr double pi = std::numbers::pi;

const ConvexPolygon& big_square() {
  static const ConvexPolygon k = make_polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  return k;
}

// Polar by brute force: intersect the half-planes <y, v - c> <= 1 over the
// vertices v. Vertices of the polar come from pairs of adjacent constraints;
// here every pair is tried and the feasible intersection points hulled.
ConvexPolygon polar_oracle(const ConvexPolygon& k, const Point2& c) {
  std::vector<Point2> pts;
  const auto& v = k.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const Point2 a = v[i] - c, b = v[j] - c;
      const double det = a.x * b.y - a.y * b.x;
      if (std::abs(det) < 1e-14) continue;
      const Point2 y{(b.y - a.y) / det, (a.x - b.x) / det};
      bool ok = true;
      for (const auto& w : v) ok = ok && dot(y, w - c) <= 1.0 + 1e-9;
      if (ok) pts.push_back(y);
    }
  return make_polygon(pts);
}

}  // namespace

TEST(CenteredBody, RejectsBoundaryAndExteriorCentres) {
  EXPECT_NO_THROW(CenteredBody(big_square(), {0.5, 0.5}));
  try {
    CenteredBody(big_square(), {1.0, 0.0});
    FAIL();
  } catch (const CentreNotInterior& e) {
    EXPECT_LT(e.edge(), big_square().size());
  }
  EXPECT_THROW(CenteredBody(big_square(), {3.0, 0.0}), CentreNotInterior);
}

TEST(Polar, SquareGivesDiamond) {
  const ConvexPolygon p = polar(CenteredBody(big_square()));
  EXPECT_TRUE(same_vertex_set(p, make_polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), 1e-15));
}

TEST(Polar, RegularTriangle) {
  // Edge lines of the circumradius-1 triangle sit at distance 1/2 with
  // normals opposite the vertices: the polar has circumradius 2, rotated.
  const ConvexPolygon t = regular_ngon(3);
  const ConvexPolygon expected = regular_ngon(3, 2.0, pi / 3.0);
  EXPECT_TRUE(same_vertex_set(polar(CenteredBody(t)), expected, 1e-12));
}

TEST(Polar, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ConvexPolygon k = random_body(seed, 3 + seed % 9);
    const Point2 c = centroid(k) + Point2{0.01, -0.02};
    EXPECT_TRUE(same_vertex_set(polar(CenteredBody(k, c)), polar_oracle(k, c), 1e-9)) << seed;
  }
}

TEST(Polar, Biduality) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ConvexPolygon k = random_body(seed, 4 + seed % 7);
    const Point2 c = centroid(k);
    const ConvexPolygon back = polar(CenteredBody(polar(CenteredBody(k, c))));
    EXPECT_TRUE(same_vertex_set(back, translate(k, -c), 1e-9)) << seed;
  }
}

TEST(Quadrature, GaussLegendreIntegratesPolynomials) {
  const GaussRule r = gauss_legendre(16);
  double sum = 0.0;
  for (double w : r.weights) sum += w;
  EXPECT_NEAR(sum, 2.0, 1e-14);
  // Exact for degree 31.
  const double v = integrate(r, 0.0, 1.0, 1, [](double x) { return std::pow(x, 31); });
  EXPECT_NEAR(v, 1.0 / 32.0, 1e-15);
}

TEST(PolarAreaQuadrature, Examples) {
  EXPECT_NEAR(polar_area_quadrature(CenteredBody(big_square()), 256), 2.0, 1e-8);
  EXPECT_NEAR(polar_area_quadrature(CenteredBody(regular_ngon(6)), 256), 2.0 * std::sqrt(3.0), 1e-8);
  EXPECT_THROW(polar_area_quadrature(CenteredBody(big_square()), 8), InvalidParameter);
}

TEST(PolarAreaQuadrature, AgreesWithExactPolar) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ConvexPolygon k = random_body(seed, 3 + seed % 10);
    const CenteredBody b(k, centroid(k));
    const double exact = area(polar(b));
    EXPECT_NEAR(polar_area_quadrature(b) / exact, 1.0, 1e-8) << seed;
  }
}

TEST(VolumeProduct, EqualityCases) {
  EXPECT_NEAR(volume_product(CenteredBody(big_square())).product, 8.0, 1e-12);
  const ConvexPolygon t = make_polygon({{0, 0}, {4, 1}, {1, 3}});
  EXPECT_NEAR(volume_product(CenteredBody(t, centroid(t))).product, 27.0 / 4.0, 1e-12);
  for (int n = 3; n <= 12; ++n) {
    const double s = std::sin(pi / n);
    EXPECT_NEAR(volume_product(CenteredBody(regular_ngon(n))).product / (n * n * s * s), 1.0, 1e-12) << n;
  }
  EXPECT_NEAR(volume_product(CenteredBody(regular_ngon(6))).product, 9.0, 1e-12);
}

TEST(VolumeProduct, LinearInvariance) {
  const ConvexPolygon k = random_body(17, 8);
  const Point2 c = centroid(k);
  const LinearMap2 a = LinearMap2::linear(2.0, 0.7, -0.4, 0.5);
  const double p0 = volume_product(CenteredBody(k, c)).product;
  const double p1 = volume_product(CenteredBody(apply_map(k, a), a.apply(c))).product;
  EXPECT_NEAR(p1 / p0, 1.0, 1e-12);
}

TEST(Eggleston, Examples) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ConvexPolygon t = random_body(seed, 3);
    EXPECT_NEAR(eggleston_product(t), 6.0, 6e-9) << seed;
  }
  EXPECT_NEAR(eggleston_product(big_square()), 8.0, 1e-12);
  const ConvexPolygon k = random_body(9, 7);
  EXPECT_NEAR(eggleston_product(translate(k, {5, 7})), eggleston_product(k), 1e-9);
}

TEST(Moments, OriginMomentsOfSquare) {
  const Moments m = origin_moments(big_square());
  EXPECT_NEAR(m.area, 4.0, 1e-15);
  EXPECT_NEAR(norm(m.first), 0.0, 1e-15);
  EXPECT_NEAR(m.xx, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.xy, 0.0, 1e-15);
  EXPECT_NEAR(m.yy, 4.0 / 3.0, 1e-15);
}
