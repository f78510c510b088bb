#pragma once

// Polar bodies about a designated interior centre, polar area by quadrature of
// the support-function integral, and the volume and Eggleston products.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "volprod/geometry.hpp"
#include "volprod/quadrature.hpp"

namespace volprod {

/// A polygon together with a polarity centre strictly inside it.
class CenteredBody {
 public:
  CenteredBody(ConvexPolygon polygon, const Point2& centre) : polygon_(std::move(polygon)), centre_(centre) {
    if (!is_finite(centre)) throw CentreNotInterior(0, "centre has a non-finite coordinate");
    const double limit = tol::centre * diameter(polygon_);
    for (std::size_t k = 0; k < polygon_.size(); ++k) {
      const double offset = -polygon_.edge_half_plane(k).signed_distance(centre);
      if (!(offset > limit))
        throw CentreNotInterior(k, "centre is not interior: distance " + std::to_string(offset) +
                                       " to the line of edge " + std::to_string(k));
    }
  }
  /// Centred at the origin.
  explicit CenteredBody(ConvexPolygon polygon) : CenteredBody(std::move(polygon), Point2{}) {}

  const ConvexPolygon& polygon() const { return polygon_; }
  const Point2& centre() const { return centre_; }
  /// Offset of edge k's line from the centre (strictly positive).
  double edge_offset(std::size_t k) const { return -polygon_.edge_half_plane(k).signed_distance(centre_); }

 private:
  ConvexPolygon polygon_;
  Point2 centre_;
};

/// Dual point n_k / d_k of every edge line, in edge order.
inline std::vector<Point2> dual_points(const CenteredBody& b) {
  std::vector<Point2> out;
  out.reserve(b.polygon().size());
  for (std::size_t k = 0; k < b.polygon().size(); ++k)
    out.push_back(b.polygon().edge_normal(k) / b.edge_offset(k));
  return out;
}

/// (K - centre)^*, returned about the origin.
inline ConvexPolygon polar(const CenteredBody& b) { return make_polygon(dual_points(b)); }

inline double polar_area(const CenteredBody& b) { return area(polar(b)); }

/// Area, first and second moments of a polygon about the origin, via the fan
/// of triangles (o, v_k, v_{k+1}). Valid for any polygon containing o.
struct Moments {
  double area = 0.0;
  Point2 first;
  double xx = 0.0, xy = 0.0, yy = 0.0;
};

inline Moments origin_moments(const ConvexPolygon& p) {
  Moments m;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Point2& a = p.vertex(k);
    const Point2& b = p.vertex(k + 1);
    const double t = 0.5 * cross(a, b);
    m.area += t;
    m.first += (a + b) * (t / 3.0);
    m.xx += t / 6.0 * (a.x * a.x + b.x * b.x + a.x * b.x);
    m.yy += t / 6.0 * (a.y * a.y + b.y * b.y + a.y * b.y);
    m.xy += t / 6.0 * (a.x * a.y + b.x * b.y + 0.5 * (a.x * b.y + a.y * b.x));
  }
  return m;
}

/// (1/2) * integral over the circle of h_{K-centre}(u)^{-2}, with every
/// edge-normal angle a panel boundary and 16-point Gauss-Legendre per panel.
/// Panels are bisected where the integrand peaks, near vertices far from the
/// centre relative to their adjacent edge offsets.
inline double polar_area_quadrature(const CenteredBody& b, int m = 256) {
  if (m < 16) throw InvalidParameter("polar_area_quadrature needs at least 16 nodes");
  static const GaussRule rule = gauss_legendre(16);
  const ConvexPolygon& k = b.polygon();
  const std::size_t n = k.size();
  std::vector<double> angle(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Point2 nrm = k.edge_normal(e);
    angle[e] = std::atan2(nrm.y, nrm.x);
  }
  const double max_panel = std::min(std::numbers::pi / 8.0, 2.0 * std::numbers::pi * 16.0 / m);
  double total = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    // Between the normals of edges e-1 and e the support point is vertex e.
    double lo = angle[(e + n - 1) % n];
    double hi = angle[e];
    while (hi <= lo) hi += 2.0 * std::numbers::pi;
    const Point2 w = k.vertex(e) - b.centre();
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / max_panel));
    total += integrate_adaptive(rule, lo, hi, std::max<std::size_t>(panels, 1), 1e-13, [&](double t) {
      const double h = std::cos(t) * w.x + std::sin(t) * w.y;
      return 0.5 / (h * h);
    });
  }
  return total;
}

struct VolumeProductReport {
  double body_area = 0.0;
  double polar_area = 0.0;
  double product = 0.0;
  Point2 centre;
};

inline VolumeProductReport volume_product(const CenteredBody& b) {
  VolumeProductReport r;
  r.body_area = area(b.polygon());
  r.polar_area = polar_area(b);
  r.product = r.body_area * r.polar_area;
  r.centre = b.centre();
  return r;
}

/// |K| * |((K - K)/2)^*|, the polar taken about the origin.
inline double eggleston_product(const ConvexPolygon& k) {
  return area(k) * polar_area(CenteredBody(central_symmetral(k)));
}

}  // namespace volprod
