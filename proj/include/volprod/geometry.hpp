#pragma once

// Planar convex polygon primitives in double precision.
//
// A ConvexPolygon is always canonical: counterclockwise, strictly convex
// (collinear triples merged), no coincident vertices, and starting at its
// lexicographically smallest vertex. Two polygons built from the same vertex
// set therefore compare equal vertex by vertex.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volprod/errors.hpp"

namespace volprod {

namespace tol {
/// Relative tolerance on cross products (scaled by operand magnitudes).
inline constexpr double cross = 1e-12;
/// A consecutive triple is merged when its area is below merge * diam^2.
inline constexpr double merge = 1e-12;
/// Vertices closer than dedup * scale are identified.
inline constexpr double dedup = 1e-12;
/// Edge lines closer than this times diam to the centre reject the centre.
inline constexpr double centre = 1e-10;
}  // namespace tol

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point2& operator-=(const Point2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Point2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr Point2 operator+(Point2 a, const Point2& b) { return a += b; }
constexpr Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
constexpr Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }
constexpr Point2 operator*(Point2 a, double s) { return a *= s; }
constexpr Point2 operator*(double s, Point2 a) { return a *= s; }
constexpr Point2 operator/(const Point2& a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
/// Twice the signed area of the triangle (o, a, b).
constexpr double cross(const Point2& o, const Point2& a, const Point2& b) {
  return cross(a - o, b - o);
}
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }
inline Point2 normalized(const Point2& a) { return a / norm(a); }
/// Rotation by +90 degrees.
constexpr Point2 perp(const Point2& a) { return {-a.y, a.x}; }
inline Point2 rotated(const Point2& a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline bool is_finite(const Point2& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

constexpr bool lexicographic_less(const Point2& a, const Point2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

/// Intersection of the lines p + s*d and q + t*e; empty when parallel.
inline std::optional<Point2> line_intersection(const Point2& p, const Point2& d, const Point2& q,
                                               const Point2& e) {
  const double den = cross(d, e);
  if (std::abs(den) <= tol::cross * norm(d) * norm(e)) return std::nullopt;
  const double s = cross(q - p, e) / den;
  return p + d * s;
}

/// The closed half-plane {q : <normal, q> <= offset}, with a unit normal.
struct HalfPlane {
  Point2 normal;
  double offset = 0.0;

  /// Normalizes the given normal (and rescales the offset accordingly).
  static HalfPlane from(const Point2& normal, double offset) {
    const double len = norm(normal);
    if (!(len > 0.0) || !std::isfinite(len)) throw InvalidParameter("half-plane normal must be nonzero");
    return {normal / len, offset / len};
  }
  double signed_distance(const Point2& q) const { return dot(normal, q) - offset; }
  bool contains(const Point2& q, double slack = 0.0) const { return signed_distance(q) <= slack; }
};

/// Affine map q -> L q + t with L = [[a11, a12], [a21, a22]].
struct LinearMap2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
  double tx = 0.0, ty = 0.0;

  static constexpr LinearMap2 identity() { return {}; }
  static constexpr LinearMap2 linear(double a11, double a12, double a21, double a22) {
    return {a11, a12, a21, a22, 0.0, 0.0};
  }
  static constexpr LinearMap2 scaling(double s) { return {s, 0.0, 0.0, s, 0.0, 0.0}; }
  static constexpr LinearMap2 translation(const Point2& t) { return {1.0, 0.0, 0.0, 1.0, t.x, t.y}; }
  static LinearMap2 rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c, 0.0, 0.0};
  }
  /// Linear map with columns c1, c2.
  static constexpr LinearMap2 from_columns(const Point2& c1, const Point2& c2) {
    return {c1.x, c2.x, c1.y, c2.y, 0.0, 0.0};
  }

  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr Point2 apply_linear(const Point2& q) const {
    return {a11 * q.x + a12 * q.y, a21 * q.x + a22 * q.y};
  }
  constexpr Point2 apply(const Point2& q) const { return apply_linear(q) + Point2{tx, ty}; }
  constexpr Point2 operator()(const Point2& q) const { return apply(q); }
  constexpr Point2 translation_part() const { return {tx, ty}; }
  constexpr LinearMap2 linear_part() const { return {a11, a12, a21, a22, 0.0, 0.0}; }

  bool is_singular() const {
    const double scale = std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
    return !(scale > 0.0) || !(std::abs(det()) > 1e-14 * scale * scale) || !std::isfinite(det());
  }

  LinearMap2 inverse() const {
    if (is_singular()) throw SingularMap("linear part is singular");
    const double d = det();
    LinearMap2 inv{a22 / d, -a12 / d, -a21 / d, a11 / d, 0.0, 0.0};
    const Point2 t = inv.apply_linear({tx, ty});
    inv.tx = -t.x;
    inv.ty = -t.y;
    return inv;
  }

  /// Transpose-inverse of the linear part; polars transform by it.
  LinearMap2 inverse_transpose() const {
    const LinearMap2 inv = linear_part().inverse();
    return {inv.a11, inv.a21, inv.a12, inv.a22, 0.0, 0.0};
  }
};

/// Composition (a o b)(q) = a(b(q)).
constexpr LinearMap2 compose(const LinearMap2& a, const LinearMap2& b) {
  LinearMap2 r{a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
               a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22, 0.0, 0.0};
  const Point2 t = a.apply(b.translation_part());
  r.tx = t.x;
  r.ty = t.y;
  return r;
}

/// Linear map sending m0 -> t0 and m1 -> t1 (m0, m1 independent).
inline LinearMap2 map_pairs(const Point2& m0, const Point2& m1, const Point2& t0, const Point2& t1) {
  const LinearMap2 src = LinearMap2::from_columns(m0, m1);
  const LinearMap2 dst = LinearMap2::from_columns(t0, t1);
  return compose(dst, src.inverse());
}

class ConvexPolygon;
ConvexPolygon make_polygon(std::span<const Point2> points);

class ConvexPolygon {
 public:
  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  /// Cyclic vertex access.
  const Point2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  /// Edge i runs from vertex i to vertex i+1.
  Point2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }
  /// Outward unit normal of edge i.
  Point2 edge_normal(std::size_t i) const {
    const Point2 e = edge(i);
    return normalized(Point2{e.y, -e.x});
  }
  HalfPlane edge_half_plane(std::size_t i) const {
    const Point2 n = edge_normal(i);
    return {n, dot(n, vertex(i))};
  }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  explicit ConvexPolygon(std::vector<Point2> v) : vertices_(std::move(v)) {}
  friend ConvexPolygon make_polygon(std::span<const Point2> points);

  std::vector<Point2> vertices_;
};

namespace detail {

inline double bbox_diagonal(std::span<const Point2> pts) {
  double lox = pts[0].x, hix = pts[0].x, loy = pts[0].y, hiy = pts[0].y;
  for (const auto& p : pts) {
    lox = std::min(lox, p.x);
    hix = std::max(hix, p.x);
    loy = std::min(loy, p.y);
    hiy = std::max(hiy, p.y);
  }
  return std::hypot(hix - lox, hiy - loy);
}

inline double max_pair_distance_sq(std::span<const Point2> pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Point2 d = pts[i] - pts[j];
      best = std::max(best, dot(d, d));
    }
  return best;
}

inline double signed_area(std::span<const Point2> v) {
  if (v.size() < 3) return 0.0;
  double s = 0.0;
  const Point2 o = v[0];
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += cross(o, v[i], v[i + 1]);
  return 0.5 * s;
}

/// Sutherland-Hodgman step of a convex vertex loop against one half-plane.
inline std::vector<Point2> clip_loop(const std::vector<Point2>& poly, const HalfPlane& h) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double da = h.signed_distance(a);
    const double db = h.signed_distance(b);
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + (b - a) * t);
    }
  }
  return out;
}

}  // namespace detail

/// Convex hull, canonicalized. Throws DegenerateInput when the hull has no area.
inline ConvexPolygon make_polygon(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  for (const auto& p : pts)
    if (!is_finite(p)) throw DegenerateInput("non-finite coordinate");
  if (pts.size() < 3) throw DegenerateInput("fewer than 3 points");

  std::sort(pts.begin(), pts.end(), lexicographic_less);
  const double scale = detail::bbox_diagonal(pts);
  if (!(scale > 0.0)) throw DegenerateInput("all points coincide");
  const double dedup = tol::dedup * scale;
  std::vector<Point2> uniq;
  uniq.reserve(pts.size());
  for (const auto& p : pts)
    if (uniq.empty() || distance(uniq.back(), p) > dedup) uniq.push_back(p);
  if (uniq.size() < 3) throw DegenerateInput("fewer than 3 distinct points");

  // Andrew's monotone chain; collinear points are dropped.
  const double eps = tol::cross * scale * scale;
  std::vector<Point2> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& p : uniq) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= eps) --k;
    hull[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    const Point2& p = uniq[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= eps) --k;
    hull[k++] = p;
  }
  hull.resize(k > 0 ? k - 1 : 0);

  // Merge nearly collinear triples until stable.
  const double diam_sq = detail::max_pair_distance_sq(hull);
  const double area_eps = tol::merge * diam_sq;
  const double dedup_d = tol::dedup * std::sqrt(diam_sq);
  bool changed = true;
  while (changed && hull.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < hull.size() && hull.size() >= 3; ++i) {
      const std::size_t n = hull.size();
      const Point2& prev = hull[(i + n - 1) % n];
      const Point2& cur = hull[i];
      const Point2& next = hull[(i + 1) % n];
      if (0.5 * std::abs(cross(prev, cur, next)) < area_eps || distance(prev, cur) <= dedup_d) {
        hull.erase(hull.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (hull.size() < 3) throw DegenerateInput("hull is a segment or a point");
  if (!(detail::signed_area(hull) > area_eps)) throw DegenerateInput("hull area below tolerance");

  const auto first = std::min_element(hull.begin(), hull.end(), lexicographic_less);
  std::rotate(hull.begin(), first, hull.end());
  return ConvexPolygon(std::move(hull));
}

inline ConvexPolygon make_polygon(std::initializer_list<Point2> points) {
  return make_polygon(std::span<const Point2>(points.begin(), points.size()));
}

inline double area(const ConvexPolygon& k) { return detail::signed_area(k.vertices()); }

inline Point2 centroid(const ConvexPolygon& k) {
  const Point2 o = k[0];
  double a = 0.0;
  Point2 c{};
  for (std::size_t i = 1; i + 1 < k.size(); ++i) {
    const double w = cross(o, k[i], k[i + 1]);
    a += w;
    c += (k[i] - o + (k[i + 1] - o)) * w;
  }
  return o + c / (3.0 * a);
}

inline double support(const ConvexPolygon& k, const Point2& u) {
  double best = dot(u, k[0]);
  for (const auto& v : k.vertices()) best = std::max(best, dot(u, v));
  return best;
}

/// Index of a vertex attaining the support value in direction u (first on ties).
inline std::size_t support_vertex(const ConvexPolygon& k, const Point2& u) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < k.size(); ++i)
    if (dot(u, k[i]) > dot(u, k[best])) best = i;
  return best;
}

inline double diameter(const ConvexPolygon& k) {
  return std::sqrt(detail::max_pair_distance_sq(k.vertices()));
}

/// Minimal width over all directions (attained at an edge normal).
inline double width(const ConvexPolygon& k) {
  double best = INFINITY;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const Point2 n = k.edge_normal(i);
    best = std::min(best, support(k, n) + support(k, -n));
  }
  return best;
}

inline std::vector<HalfPlane> edge_half_planes(const ConvexPolygon& k) {
  std::vector<HalfPlane> hs;
  hs.reserve(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) hs.push_back(k.edge_half_plane(i));
  return hs;
}

inline bool contains(const ConvexPolygon& k, const Point2& q, double slack = 0.0) {
  for (std::size_t i = 0; i < k.size(); ++i)
    if (!k.edge_half_plane(i).contains(q, slack)) return false;
  return true;
}

/// Every vertex of inner lies in outer up to slack.
inline bool contains(const ConvexPolygon& outer, const ConvexPolygon& inner, double slack) {
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](const Point2& v) { return contains(outer, v, slack); });
}

/// Smallest distance from q to an edge line (negative when q is outside).
inline double interior_margin(const ConvexPolygon& k, const Point2& q) {
  double m = INFINITY;
  for (std::size_t i = 0; i < k.size(); ++i) m = std::min(m, -k.edge_half_plane(i).signed_distance(q));
  return m;
}

/// Intersection of half-planes inside a bounding square of half-side `box`
/// about `centre`. The result may be empty or degenerate.
inline std::vector<Point2> intersect_half_planes(std::span<const HalfPlane> hs, const Point2& centre,
                                                 double box) {
  std::vector<Point2> poly{centre + Point2{-box, -box}, centre + Point2{box, -box},
                           centre + Point2{box, box}, centre + Point2{-box, box}};
  for (const auto& h : hs) {
    poly = detail::clip_loop(poly, h);
    if (poly.empty()) break;
  }
  return poly;
}

inline ConvexPolygon clip(const ConvexPolygon& k, const HalfPlane& h) {
  std::vector<Point2> v(k.vertices().begin(), k.vertices().end());
  v = detail::clip_loop(v, h);
  if (v.size() < 3) throw DegenerateInput("clip result is empty");
  return make_polygon(v);
}

inline ConvexPolygon clip(const ConvexPolygon& k, std::span<const HalfPlane> hs) {
  std::vector<Point2> v(k.vertices().begin(), k.vertices().end());
  for (const auto& h : hs) {
    v = detail::clip_loop(v, h);
    if (v.size() < 3) throw DegenerateInput("clip result is empty");
  }
  return make_polygon(v);
}

inline ConvexPolygon transform(const ConvexPolygon& k, const auto& fn) {
  std::vector<Point2> v;
  v.reserve(k.size());
  for (const auto& p : k.vertices()) v.push_back(fn(p));
  return make_polygon(v);
}

inline ConvexPolygon apply_map(const ConvexPolygon& k, const LinearMap2& a) {
  if (a.is_singular()) throw SingularMap("cannot apply a singular map to a polygon");
  return transform(k, [&](const Point2& p) { return a.apply(p); });
}

inline ConvexPolygon translate(const ConvexPolygon& k, const Point2& t) {
  return transform(k, [&](const Point2& p) { return p + t; });
}

/// Homothety about the origin; s must be nonzero.
inline ConvexPolygon scale(const ConvexPolygon& k, double s) {
  if (!(s != 0.0) || !std::isfinite(s)) throw InvalidParameter("scale factor must be finite and nonzero");
  return transform(k, [&](const Point2& p) { return p * s; });
}

inline ConvexPolygon negate(const ConvexPolygon& k) {
  return transform(k, [](const Point2& p) { return -p; });
}

/// Minkowski sum by merging the edge sequences by angle.
inline ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  auto bottom_first = [](const ConvexPolygon& k) {
    std::vector<Point2> v(k.vertices().begin(), k.vertices().end());
    const auto it = std::min_element(v.begin(), v.end(), [](const Point2& p, const Point2& q) {
      return p.y < q.y || (p.y == q.y && p.x < q.x);
    });
    std::rotate(v.begin(), it, v.end());
    v.push_back(v[0]);
    v.push_back(v[1]);
    return v;
  };
  const std::vector<Point2> p = bottom_first(a);
  const std::vector<Point2> q = bottom_first(b);
  std::vector<Point2> out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() - 2 || j < q.size() - 2) {
    out.push_back(p[i] + q[j]);
    const double c = cross(p[i + 1] - p[i], q[j + 1] - q[j]);
    if (c >= 0.0 && i < p.size() - 2) ++i;
    if (c <= 0.0 && j < q.size() - 2) ++j;
  }
  return make_polygon(out);
}

/// (K + (-K)) / 2, the o-symmetric central symmetral of K.
inline ConvexPolygon central_symmetral(const ConvexPolygon& k) {
  return scale(minkowski_sum(k, negate(k)), 0.5);
}

/// K intersected with the closed cone at apex spanned counterclockwise from
/// ray1 to ray2 (opening angle strictly between 0 and pi).
inline ConvexPolygon clip_sector(const ConvexPolygon& k, const Point2& apex, const Point2& ray1,
                                 const Point2& ray2) {
  if (!(cross(ray1, ray2) > tol::cross * norm(ray1) * norm(ray2)))
    throw DegenerateInput("sector rays must span an angle in (0, pi)");
  if (!(interior_margin(k, apex) > tol::centre * diameter(k)))
    throw DegenerateInput("sector apex is not interior");
  const std::array<HalfPlane, 2> hs{HalfPlane::from({ray1.y, -ray1.x}, dot(Point2{ray1.y, -ray1.x}, apex)),
                                    HalfPlane::from({-ray2.y, ray2.x}, dot(Point2{-ray2.y, ray2.x}, apex))};
  return clip(k, hs);
}

/// Same vertex set up to tol, independent of starting vertex.
inline bool same_vertex_set(const ConvexPolygon& a, const ConvexPolygon& b, double tolerance) {
  if (a.size() != b.size()) return false;
  for (const auto& v : a.vertices()) {
    const bool hit = std::any_of(b.vertices().begin(), b.vertices().end(),
                                 [&](const Point2& w) { return distance(v, w) <= tolerance; });
    if (!hit) return false;
  }
  return true;
}

/// K = 2c - K, checked on the vertex set with tolerance tolerance * diam.
inline bool is_centrally_symmetric(const ConvexPolygon& k, const Point2& c = {}, double tolerance = 1e-9) {
  const double t = tolerance * diameter(k);
  return std::all_of(k.vertices().begin(), k.vertices().end(), [&](const Point2& v) {
    const Point2 w = c * 2.0 - v;
    return std::any_of(k.vertices().begin(), k.vertices().end(),
                       [&](const Point2& u) { return distance(u, w) <= t; });
  });
}

/// Invariance under rotation by 2 pi / n about the origin.
inline bool is_nfold_symmetric(const ConvexPolygon& k, int n, double tolerance = 1e-9) {
  if (n < 1) return false;
  const double t = tolerance * diameter(k);
  const double angle = 2.0 * std::numbers::pi / n;
  return std::all_of(k.vertices().begin(), k.vertices().end(), [&](const Point2& v) {
    const Point2 w = rotated(v, angle);
    return std::any_of(k.vertices().begin(), k.vertices().end(),
                       [&](const Point2& u) { return distance(u, w) <= t; });
  });
}

/// Largest s >= 0 such that s * points + y fits in q for some translation y.
/// Returns (s, y) from the feasible side of a bisection, so the inclusion
/// holds for the returned pair.
struct HomothetFit {
  double scale = 0.0;
  Point2 shift;
};

inline HomothetFit largest_homothet(std::span<const Point2> points, const ConvexPolygon& q) {
  const std::vector<HalfPlane> hs = edge_half_planes(q);
  double max_extent = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) max_extent = std::max(max_extent, distance(points[i], points[j]));
  if (!(max_extent > 0.0)) throw DegenerateInput("homothet source has no extent");
  const double dq = diameter(q);
  const Point2 cq = centroid(q);
  const Point2 p0 = points[0];

  // Any feasible shift y has y + s p0 in q, which bounds the search box.
  auto feasible = [&](double s) {
    std::vector<HalfPlane> shifted;
    shifted.reserve(hs.size());
    for (const auto& h : hs) {
      double hp = dot(h.normal, points[0]);
      for (const auto& p : points) hp = std::max(hp, dot(h.normal, p));
      shifted.push_back({h.normal, h.offset - s * hp});
    }
    return intersect_half_planes(shifted, cq - p0 * s, 1.5 * dq);
  };
  auto witness = [](const std::vector<Point2>& region) {
    Point2 c{};
    for (const auto& p : region) c += p;
    return c / static_cast<double>(region.size());
  };

  double lo = 0.0, hi = dq / max_extent * (1.0 + 1e-12);
  std::vector<Point2> best = feasible(0.0);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    std::vector<Point2> region = feasible(mid);
    if (region.empty()) {
      hi = mid;
    } else {
      lo = mid;
      best = std::move(region);
    }
  }
  return {lo, witness(best)};
}

}  // namespace volprod
