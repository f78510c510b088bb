#pragma once

// Canonical bodies (regular and bumped n-gons), maximal inscribed
// parallelograms and triangles, homothetic sandwich certificates, and seeded
// random bodies.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "volprod/geometry.hpp"
#include "volprod/random.hpp"

namespace volprod {

inline std::vector<Point2> regular_ngon_points(int n, double circumradius, double phase) {
  std::vector<Point2> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v.push_back(unit_vector(phase + 2.0 * std::numbers::pi * k / n) * circumradius);
  return v;
}

inline ConvexPolygon regular_ngon(int n, double circumradius = 1.0, double phase = 0.0) {
  if (n < 3) throw InvalidParameter("regular_ngon needs n >= 3");
  if (!(circumradius > 0.0) || !std::isfinite(circumradius)) throw InvalidParameter("circumradius must be positive");
  return make_polygon(regular_ngon_points(n, circumradius, phase));
}

/// Largest bump for which bumped_ngon accepts eps.
inline double bumped_ngon_max_eps(int n) { return 1.0 / std::cos(std::numbers::pi / n) - 1.0; }

/// Vertices of R_n (circumradius 1) interleaved with (1 + eps) times its side
/// midpoints, without any domain check.
inline std::vector<Point2> bumped_ngon_points(int n, double eps) {
  const std::vector<Point2> r = regular_ngon_points(n, 1.0, 0.0);
  std::vector<Point2> v;
  v.reserve(2 * r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    v.push_back(r[k]);
    v.push_back((r[k] + r[(k + 1) % r.size()]) * (0.5 * (1.0 + eps)));
  }
  return v;
}

inline ConvexPolygon bumped_ngon(int n, double eps) {
  if (n < 3) throw InvalidParameter("bumped_ngon needs n >= 3");
  if (!(eps >= 0.0) || !(eps <= bumped_ngon_max_eps(n)))
    throw InvalidParameter("bumped_ngon: eps must lie in [0, 1/cos(pi/n) - 1]");
  return make_polygon(bumped_ngon_points(n, eps));
}

/// Closed-form volume product of the bumped n-gon about o.
inline double bumped_ngon_product(int n, double eps) {
  const double s = std::sin(std::numbers::pi / n);
  const double cot = 1.0 / std::tan(std::numbers::pi / n);
  const double base = n * n * s * s;
  return base + base * (eps - eps * eps * cot * cot) / (1.0 + eps);
}

/// Closed-form Eggleston product of the bumped triangle.
inline double bumped_triangle_eggleston(double eps) {
  return 6.0 * (9.0 + 15.0 * eps + 3.0 * eps * eps - 3.0 * eps * eps * eps) / ((3.0 + eps) * (3.0 + eps));
}

struct Symmetry {
  enum class Kind { None, Central, NFold };
  Kind kind = Kind::None;
  int k = 1;

  static constexpr Symmetry none() { return {Kind::None, 1}; }
  static constexpr Symmetry central() { return {Kind::Central, 2}; }
  static constexpr Symmetry nfold(int k) { return {Kind::NFold, k}; }
};

/// Hull of `points` symmetrized about o: K u -K for Central, the k rotated
/// copies for NFold(k).
inline ConvexPolygon symmetrize(const std::vector<Point2>& points, Symmetry sym) {
  std::vector<Point2> all;
  switch (sym.kind) {
    case Symmetry::Kind::None:
      all = points;
      break;
    case Symmetry::Kind::Central:
      all = points;
      for (const auto& p : points) all.push_back(-p);
      break;
    case Symmetry::Kind::NFold: {
      if (sym.k < 1) throw InvalidParameter("NFold symmetry order must be positive");
      for (int r = 0; r < sym.k; ++r) {
        const double a = 2.0 * std::numbers::pi * r / sym.k;
        for (const auto& p : points) all.push_back(r == 0 ? p : rotated(p, a));
      }
      break;
    }
  }
  return make_polygon(all);
}

/// n random points at uniform angles with radii uniform in [0.5, 1], hulled
/// and symmetrized. Draws are repeated until the hull is nondegenerate.
inline ConvexPolygon random_body(std::uint64_t seed, int n, Symmetry sym = Symmetry::none()) {
  if (n < 3) throw InvalidParameter("random_body needs n >= 3");
  Rng rng(seed);
  for (;;) {
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double radius = rng.uniform(0.5, 1.0);
      pts.push_back(unit_vector(angle) * radius);
    }
    try {
      return symmetrize(pts, sym);
    } catch (const DegenerateInput&) {
    }
  }
}

/// The canonical model bodies.
struct Model {
  enum class Kind { Parallelogram, Triangle, RegularNGon };
  Kind kind = Kind::Triangle;
  int n = 3;

  static constexpr Model parallelogram() { return {Kind::Parallelogram, 4}; }
  static constexpr Model triangle() { return {Kind::Triangle, 3}; }
  static constexpr Model regular(int n) { return {Kind::RegularNGon, n}; }

  std::string name() const {
    switch (kind) {
      case Kind::Parallelogram: return "parallelogram";
      case Kind::Triangle: return "triangle";
      case Kind::RegularNGon: return "regular" + std::to_string(n);
    }
    return "";
  }
};

/// M0: the square [-1,1]^2, the regular triangle of circumradius 1 with a
/// vertex at (0,1), or R_n of circumradius 1 with a vertex at (1,0).
inline ConvexPolygon canonical_model(Model m) {
  switch (m.kind) {
    case Model::Kind::Parallelogram: return make_polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    case Model::Kind::Triangle: return regular_ngon(3, 1.0, std::numbers::pi / 2.0);
    case Model::Kind::RegularNGon: return regular_ngon(m.n, 1.0, 0.0);
  }
  throw InvalidParameter("unknown model");
}

/// Near-extremal body: M0 with `extra` boundary points pushed outward by up
/// to delta times the circumradius, symmetrized to match the model, then
/// carried by a random linear map when the model class is affine.
inline ConvexPolygon perturbed_model(std::uint64_t seed, Model m, double delta, int extra = 4) {
  Rng rng(seed);
  const ConvexPolygon m0 = canonical_model(m);
  std::vector<Point2> pts(m0.vertices().begin(), m0.vertices().end());
  for (int i = 0; i < extra; ++i) {
    const std::size_t e = static_cast<std::size_t>(rng.integer(0, static_cast<int>(m0.size()) - 1));
    const double t = rng.uniform(0.05, 0.95);
    const Point2 q = m0.vertex(e) + m0.edge(e) * t;
    pts.push_back(q + m0.edge_normal(e) * (delta * rng.uniform()));
  }
  Symmetry sym = Symmetry::none();
  if (m.kind == Model::Kind::Parallelogram) sym = Symmetry::central();
  if (m.kind == Model::Kind::RegularNGon) sym = Symmetry::nfold(m.n);
  ConvexPolygon body = symmetrize(pts, sym);
  if (m.kind == Model::Kind::RegularNGon) return body;
  for (;;) {
    const LinearMap2 a = LinearMap2::linear(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                            rng.uniform(0.5, 2.0));
    if (std::abs(a.det()) > 0.2) return apply_map(body, a);
  }
}

/// Maximal-area o-symmetric parallelogram [v_i, v_j, -v_i, -v_j] in an
/// o-symmetric polygon; the bilinear area 2|v_i x v_j| peaks at vertices.
inline ConvexPolygon max_area_inscribed_symmetric_parallelogram(const ConvexPolygon& k) {
  if (!is_centrally_symmetric(k)) throw NotSymmetric("body is not o-symmetric");
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      const double a = std::abs(cross(k[i], k[j]));
      if (a > best * (1.0 + 1e-12)) {
        best = a;
        bi = i;
        bj = j;
      }
    }
  return make_polygon({k[bi], k[bj], -k[bi], -k[bj]});
}

struct InscribedTriangle {
  std::array<Point2, 3> vertices;
  std::array<std::size_t, 3> indices{};
  double area = 0.0;
  /// Another vertex triple reaches the same area within 1e-9 relative.
  bool tie = false;
};

/// Maximal-area triangle on vertex triples; the first triple in index order
/// wins among ties.
inline InscribedTriangle max_area_inscribed_triangle_detail(const ConvexPolygon& k) {
  InscribedTriangle best;
  best.area = -1.0;
  std::vector<double> areas;
  const std::size_t n = k.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        const double a = 0.5 * std::abs(cross(k[i], k[j], k[l]));
        areas.push_back(a);
        if (a > best.area * (1.0 + 1e-12)) {
          best.area = a;
          best.indices = {i, j, l};
        }
      }
  best.vertices = {k[best.indices[0]], k[best.indices[1]], k[best.indices[2]]};
  const auto near = std::count_if(areas.begin(), areas.end(),
                                  [&](double a) { return a >= best.area * (1.0 - 1e-9); });
  best.tie = near > 1;
  return best;
}

inline ConvexPolygon max_area_inscribed_triangle(const ConvexPolygon& k) {
  const InscribedTriangle t = max_area_inscribed_triangle_detail(k);
  return make_polygon({t.vertices[0], t.vertices[1], t.vertices[2]});
}

/// lambda1 (M + t) + x  in K  in  lambda2 (M + t) + x, with M = map(M0).
struct SandwichCertificate {
  ConvexPolygon inner;
  ConvexPolygon outer;
  Model model;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Point2 x;
  /// Affine map carrying the canonical model M0 onto M.
  LinearMap2 map;
  /// The construction's inscribed body and its circumscribed partner.
  ConvexPolygon k_inner;
  ConvexPolygon k_outer;
  /// The inscribed triangle or parallelogram was not unique.
  bool tie = false;

  double ratio() const { return lambda2 / lambda1; }
  /// Centre of [(lambda1 + lambda2)/2] M + x.
  Point2 mid_centre() const { return map.translation_part() * (0.5 * (lambda1 + lambda2)) + x; }
};

namespace detail {

inline LinearMap2 affine_from_triangles(const std::array<Point2, 3>& src, const std::array<Point2, 3>& dst) {
  LinearMap2 l = map_pairs(src[1] - src[0], src[2] - src[0], dst[1] - dst[0], dst[2] - dst[0]);
  const Point2 t = dst[0] - l.apply_linear(src[0]);
  l.tx = t.x;
  l.ty = t.y;
  return l;
}

struct Fit {
  double lambda1, lambda2;
  Point2 x, t;
};

/// Optimal homothety pair for the o-centred model shape m (linear image of M0).
inline Fit fit_homothets(const ConvexPolygon& k, const ConvexPolygon& m) {
  const HomothetFit in = largest_homothet(m.vertices(), k);
  const HomothetFit out = largest_homothet(k.vertices(), m);
  const double l1 = in.scale;
  const double l2 = 1.0 / out.scale;
  const Point2 c1 = in.shift;
  const Point2 c2 = -out.shift * l2;
  Fit f{l1, l2, {}, {}};
  if (l2 - l1 > 1e-12 * l2) {
    f.t = (c2 - c1) / (l2 - l1);
    f.x = c1 - f.t * l1;
  } else {
    f.x = (c1 + c2) * 0.5;
  }
  return f;
}

}  // namespace detail

/// Builds K_i and K_o from their inscribed and circumscribed constructions, then optimizes the
/// homothety pair over the orientations of both, keeping the smaller ratio.
inline SandwichCertificate sandwich(const ConvexPolygon& k, Model model) {
  const ConvexPolygon m0 = canonical_model(model);
  std::vector<LinearMap2> candidates;  // linear parts, M = A M0
  std::vector<Point2> ki_pts, ko_pts;
  bool tie = false;

  switch (model.kind) {
    case Model::Kind::Parallelogram: {
      const ConvexPolygon p = max_area_inscribed_symmetric_parallelogram(k);
      const Point2 a = p[0], b = p[1];
      ki_pts = {a, b, -a, -b};
      ko_pts = {a + b, b - a, -a - b, a - b};
      candidates.push_back(LinearMap2::from_columns((a - b) * 0.5, (a + b) * 0.5));
      candidates.push_back(LinearMap2::from_columns(a, b));
      double best = std::abs(cross(a, b));
      int near = 0;
      for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = i + 1; j < k.size(); ++j)
          if (std::abs(cross(k[i], k[j])) >= best * (1.0 - 1e-9)) ++near;
      tie = near > 4;  // pairs (i,j), (i,-j), (-i,j), (-i,-j) give one parallelogram
      break;
    }
    case Model::Kind::Triangle: {
      const InscribedTriangle t = max_area_inscribed_triangle_detail(k);
      tie = t.tie;
      const auto& [a, b, c] = t.vertices;
      ki_pts = {a, b, c};
      ko_pts = {b + c - a, c + a - b, a + b - c};
      const Point2 g = (a + b + c) / 3.0;
      const std::array<Point2, 3> w{m0[0], m0[1], m0[2]};
      candidates.push_back(detail::affine_from_triangles(w, {a - g, b - g, c - g}).linear_part());
      candidates.push_back(detail::affine_from_triangles(w, {g - a, g - b, g - c}).linear_part());
      break;
    }
    case Model::Kind::RegularNGon: {
      if (model.n < 3) throw InvalidParameter("regular model needs n >= 3");
      if (!is_nfold_symmetric(k, model.n)) throw NotSymmetric("body lacks the requested rotational symmetry");
      std::size_t far = 0;
      for (std::size_t i = 1; i < k.size(); ++i)
        if (norm(k[i]) > norm(k[far]) * (1.0 + 1e-12)) far = i;
      const double r = norm(k[far]);
      const double phase = std::atan2(k[far].y, k[far].x);
      const double half = std::numbers::pi / model.n;
      ki_pts = regular_ngon_points(model.n, r, phase);
      ko_pts = regular_ngon_points(model.n, r / std::cos(half), phase + half);
      const LinearMap2 rot_in = LinearMap2::rotation(phase);
      const LinearMap2 rot_out = LinearMap2::rotation(phase + half);
      candidates.push_back(compose(LinearMap2::scaling(r), rot_in));
      candidates.push_back(compose(LinearMap2::scaling(r / std::cos(half)), rot_out));
      break;
    }
  }

  std::size_t best_index = 0;
  detail::Fit best{};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const detail::Fit f = detail::fit_homothets(k, apply_map(m0, candidates[i]));
    if (i == 0 || f.lambda2 / f.lambda1 < best.lambda2 / best.lambda1 * (1.0 - 1e-12)) {
      best = f;
      best_index = i;
    }
  }
  LinearMap2 map = candidates[best_index];
  map.tx = best.t.x;
  map.ty = best.t.y;
  const ConvexPolygon m = apply_map(m0, map);
  return SandwichCertificate{translate(scale(m, best.lambda1), best.x),
                             translate(scale(m, best.lambda2), best.x),
                             model,
                             best.lambda1,
                             best.lambda2,
                             best.x,
                             map,
                             make_polygon(ki_pts),
                             make_polygon(ko_pts),
                             tie};
}

}  // namespace volprod
