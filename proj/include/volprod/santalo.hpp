#pragma once

// The Santalo point: the interior minimizer of z -> |(K - z)^*|.
//
// With F(z) = |(K - z)^*| = (1/2) * integral of (h_K(u) - <u, z>)^{-2} du,
// the gradient is the integral of u (h_K - <u,z>)^{-3}, which equals three
// times the first moment of the polar, and the Hessian is twelve times its
// second moment matrix. Both are evaluated exactly on the polar polygon.

#include <array>
#include <cstdio>
#include <string>
#include <cmath>
#include <numbers>
#include <optional>

#include "volprod/geometry.hpp"
#include "volprod/polarity.hpp"
#include "volprod/quadrature.hpp"

namespace volprod {

struct Sym2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double min_eigenvalue() const {
    const double m = 0.5 * (xx + yy);
    const double d = std::hypot(0.5 * (xx - yy), xy);
    return m - d;
  }
  double quadratic(const Point2& e) const { return xx * e.x * e.x + 2.0 * xy * e.x * e.y + yy * e.y * e.y; }
};

inline Point2 polar_area_gradient(const CenteredBody& b) {
  return origin_moments(polar(b)).first * 3.0;
}

inline Sym2 polar_area_hessian(const CenteredBody& b) {
  const Moments m = origin_moments(polar(b));
  return {12.0 * m.xx, 12.0 * m.xy, 12.0 * m.yy};
}

/// Reference gradient: per-arc Gauss quadrature of u (h - <u,z>)^{-3}.
inline Point2 polar_area_gradient_quadrature(const CenteredBody& b, int m = 256) {
  if (m < 16) throw InvalidParameter("quadrature needs at least 16 nodes");
  static const GaussRule rule = gauss_legendre(16);
  const ConvexPolygon& k = b.polygon();
  const std::size_t n = k.size();
  const double max_panel = std::min(std::numbers::pi / 8.0, 2.0 * std::numbers::pi * 16.0 / m);
  Point2 g{};
  for (std::size_t e = 0; e < n; ++e) {
    const Point2 n0 = k.edge_normal((e + n - 1) % n), n1 = k.edge_normal(e);
    const double lo = std::atan2(n0.y, n0.x);
    double hi = std::atan2(n1.y, n1.x);
    while (hi <= lo) hi += 2.0 * std::numbers::pi;
    const Point2 w = k.vertex(e) - b.centre();
    const auto panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / max_panel)));
    for (int c = 0; c < 2; ++c) {
      const double scale = (hi - lo) / std::pow(norm(w), 3);
      const double part = integrate_adaptive(
          rule, lo, hi, panels, 1e-13,
          [&](double t) {
            const double ct = std::cos(t), st = std::sin(t);
            const double h = ct * w.x + st * w.y;
            return (c == 0 ? ct : st) / (h * h * h);
          },
          scale);
      (c == 0 ? g.x : g.y) += part;
    }
  }
  return g;
}

/// Uniform lower bound 3 pi (diam K)^{-4} on second directional derivatives.
inline double polar_area_hessian_lower(const ConvexPolygon& k) {
  const double d = diameter(k);
  return 3.0 * std::numbers::pi / (d * d * d * d);
}

inline double polar_area_hessian_lower(const CenteredBody& b) { return polar_area_hessian_lower(b.polygon()); }

struct SantaloResult {
  Point2 point;
  double polar_area_at_min = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// Default stopping tolerance on the gradient norm, 1e-9 (diam K)^{-3}.
inline double default_santalo_tolerance(const ConvexPolygon& k) {
  const double d = diameter(k);
  return 1e-9 / (d * d * d);
}

namespace detail {

inline std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace detail

/// Damped Newton iteration from `start` (default the centroid) with the exact Hessian; steps
/// are shortened to keep a margin of 1e-6 diam from the boundary and to
/// satisfy an Armijo decrease, with a gradient step as fallback.
inline SantaloResult santalo_point(const ConvexPolygon& k, std::optional<double> tolerance = std::nullopt,
                                   int max_iter = 200, std::optional<Point2> start = std::nullopt) {
  const double tolv = tolerance.value_or(default_santalo_tolerance(k));
  if (!(tolv > 0.0)) throw InvalidParameter("santalo tolerance must be positive");
  const double diam = diameter(k);
  const double margin = 1e-6 * diam;

  auto evaluate = [&](const Point2& z) -> std::optional<double> {
    if (!(interior_margin(k, z) >= margin)) return std::nullopt;
    return polar_area(CenteredBody(k, z));
  };

  Point2 z = start.value_or(centroid(k));
  const std::optional<double> f0 = evaluate(z);
  if (!f0) throw InvalidParameter("santalo start point is not interior");
  double f = *f0;
  for (int it = 0; it <= max_iter; ++it) {
    const CenteredBody b(k, z);
    const ConvexPolygon kstar = polar(b);
    const Moments m = origin_moments(kstar);
    const Point2 g = m.first * 3.0;
    const double gn = norm(g);
    if (gn <= tolv) return {z, f, gn, it};
    // Cancellation floor of the first moment: 3 |K*| max|y| times rounding.
    // An explicit tolerance is honoured as given.
    double reach = 0.0;
    for (const auto& y : kstar.vertices()) reach = std::max(reach, norm(y));
    const double floor = 1e-13 * 3.0 * m.area * reach;
    if (it == max_iter) break;

    const Sym2 h{12.0 * m.xx, 12.0 * m.xy, 12.0 * m.yy};
    std::array<Point2, 2> directions{};
    int ndir = 0;
    if (h.min_eigenvalue() > 0.0) {
      const double d = h.det();
      directions[ndir++] = {-(h.yy * g.x - h.xy * g.y) / d, -(-h.xy * g.x + h.xx * g.y) / d};
    }
    directions[ndir++] = -g / (h.xx + h.yy);
    if (!tolerance && gn <= floor && norm(directions[0]) <= 1e-12 * diam) return {z, f, gn, it};

    bool moved = false;
    for (int di = 0; di < ndir && !moved; ++di) {
      const Point2 step = directions[di];
      const double slope = dot(g, step);
      double t = 1.0;
      for (int ls = 0; ls < 80; ++ls, t *= 0.5) {
        const Point2 trial = z + step * t;
        const auto ft = evaluate(trial);
        if (ft && *ft <= f + 1e-4 * t * slope + 1e-14 * f) {
          z = trial;
          f = *ft;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      if (!tolerance && gn <= floor) return {z, f, gn, it};
      break;
    }
  }
  const Point2 g = polar_area_gradient(CenteredBody(k, z));
  throw NoConvergence("santalo_point: gradient norm " + detail::short_number(norm(g)) + " above tolerance " +
                      detail::short_number(tolv));
}

/// ||centroid of (K - s(K))^*||, a first-order optimality diagnostic.
inline double centroid_of_polar_check(const ConvexPolygon& k) {
  const SantaloResult s = santalo_point(k);
  return norm(centroid(polar(CenteredBody(k, s.point))));
}

}  // namespace volprod
