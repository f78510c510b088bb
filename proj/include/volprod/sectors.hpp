#pragma once

// Sector sections C = K n [o,u,v,p] and their dual sections, in coordinates
// where u = (1,0), v = (0,1) and p = (lambda, mu).

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "volprod/geometry.hpp"
#include "volprod/polarity.hpp"
#include "volprod/random.hpp"

namespace volprod {

struct SectorConfig {
  /// The boundary points in the body's frame, relative to the centre.
  Point2 u, v;
  double lambda = 0.0;
  double mu = 0.0;
  /// The section in normalized coordinates.
  ConvexPolygon section;
  /// Linear map from the body's frame (about the centre) to normalized coordinates.
  LinearMap2 normalizer;

  Point2 p() const { return {lambda, mu}; }
};

enum class Dichotomy { InnerClose, OuterClose, Neither };

inline const char* to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::InnerClose: return "inner";
    case Dichotomy::OuterClose: return "outer";
    case Dichotomy::Neither: return "neither";
  }
  return "";
}

struct SectorReport {
  double product = 0.0;
  double bound_f = 0.0;
  double g = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  std::optional<Dichotomy> dichotomy;
  bool pass = false;
};

namespace detail {

inline void check_lambda_mu(double lambda, double mu, const char* what) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !(lambda + mu >= 1.0) || !std::isfinite(lambda + mu))
    throw InvalidParameter(std::string(what) + ": need lambda, mu > 0 and lambda + mu >= 1");
}

inline bool on_segment(const Point2& q, const Point2& a, const Point2& b, double t) {
  const Point2 d = b - a;
  const double len = norm(d);
  if (std::abs(cross(d, q - a)) > t * len) return false;
  const double s = dot(q - a, d);
  return s >= -t * len && s <= len * len + t * len;
}

/// Exterior normal of a supporting line at boundary point q: the edge normal
/// inside an edge, the bisector of the normal cone at a vertex.
inline Point2 supporting_normal(const ConvexPolygon& k, const Point2& q) {
  const double t = 1e-9 * diameter(k);
  for (std::size_t i = 0; i < k.size(); ++i)
    if (distance(q, k[i]) <= t) return normalized(k.edge_normal(i) + k.edge_normal(i + k.size() - 1));
  for (std::size_t i = 0; i < k.size(); ++i)
    if (on_segment(q, k.vertex(i), k.vertex(i + 1), t)) return k.edge_normal(i);
  throw BadConfiguration("point is not on the boundary");
}

inline SectorConfig finish_config(Point2 u, Point2 v, double lambda, double mu, ConvexPolygon section,
                                  LinearMap2 normalizer) {
  return SectorConfig{u, v, lambda, mu, std::move(section), normalizer};
}

}  // namespace detail

/// Sector configuration from explicit exterior normals of the supporting
/// lines through u and v (both in the body's absolute frame).
inline SectorConfig normalize_sector(const CenteredBody& b, const Point2& u, const Point2& v, const Point2& nu,
                                     const Point2& nv) {
  const Point2 uc = u - b.centre(), vc = v - b.centre();
  const LinearMap2 frame = LinearMap2::from_columns(uc, vc);
  if (frame.is_singular()) throw BadConfiguration("u and v are linearly dependent");
  const auto p = line_intersection(uc, perp(nu), vc, perp(nv));
  if (!p) throw BadConfiguration("supporting lines are parallel");
  const LinearMap2 l = frame.inverse();
  const Point2 lp = l.apply(*p);
  const double slack = 1e-12;
  if (!(lp.x > 0.0 && lp.y > 0.0 && lp.x + lp.y >= 1.0 - slack))
    throw BadConfiguration("supporting lines do not meet beyond the chord [u, v]");
  const ConvexPolygon body = apply_map(translate(b.polygon(), -b.centre()), l);
  const ConvexPolygon c = clip_sector(body, {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  return detail::finish_config(uc, vc, lp.x, lp.y, c, l);
}

/// Sector configuration using the supporting normals of K at u and v.
inline SectorConfig normalize_sector(const CenteredBody& b, const Point2& u, const Point2& v) {
  const ConvexPolygon& k = b.polygon();
  if (std::abs(interior_margin(k, u)) > 1e-9 * diameter(k) || std::abs(interior_margin(k, v)) > 1e-9 * diameter(k))
    throw BadConfiguration("u and v must lie on the boundary");
  return normalize_sector(b, u, v, detail::supporting_normal(k, u), detail::supporting_normal(k, v));
}

/// Config in normalized coordinates: C = hull{o, (1,0), (0,1), extra} cut
/// to [o, u, p, v].
inline SectorConfig make_sector_config(double lambda, double mu, const std::vector<Point2>& extra = {}) {
  if (!(lambda > 0.0) || !(mu > 0.0) || !(lambda + mu >= 1.0))
    throw BadConfiguration("need lambda, mu > 0 and lambda + mu >= 1");
  std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}};
  pts.insert(pts.end(), extra.begin(), extra.end());
  ConvexPolygon c = make_polygon(pts);
  const std::array<HalfPlane, 4> quad{HalfPlane{{0, -1}, 0.0}, HalfPlane{{-1, 0}, 0.0},
                                      HalfPlane::from({1.0, (1.0 - lambda) / mu}, 1.0),
                                      HalfPlane::from({(1.0 - mu) / lambda, 1.0}, 1.0)};
  c = clip(c, quad);
  return detail::finish_config({1, 0}, {0, 1}, lambda, mu, std::move(c), LinearMap2::identity());
}

/// [o, u*, p*, v*] cut by <y, c> <= 1 for the vertices c of C.
inline ConvexPolygon dual_section(const SectorConfig& cfg) {
  const double l = cfg.lambda, m = cfg.mu;
  const ConvexPolygon quad = make_polygon({{0, 0}, {1, (1 - l) / m}, {1, 1}, {(1 - m) / l, 1}});
  std::vector<HalfPlane> hs;
  for (const auto& c : cfg.section.vertices())
    if (norm(c) > 0.0) hs.push_back(HalfPlane::from(c, 1.0));
  return clip(quad, hs);
}

inline double sector_product(const SectorConfig& cfg) { return area(cfg.section) * area(dual_section(cfg)); }

inline double f_bound(double lambda, double mu) {
  detail::check_lambda_mu(lambda, mu, "f_bound");
  return (lambda + mu) * (lambda + mu - 1.0) / (4.0 * lambda * mu);
}

/// (2 - <u, v*> - <u*, v>) / 4 in normalized coordinates.
inline double f_bound_dual_form(double lambda, double mu) {
  detail::check_lambda_mu(lambda, mu, "f_bound_dual_form");
  const Point2 u{1, 0}, v{0, 1};
  const Point2 us{1, (1 - lambda) / mu}, vs{(1 - mu) / lambda, 1};
  return (2.0 - dot(u, vs) - dot(us, v)) / 4.0;
}

inline double g_bound(double lambda, double mu) {
  detail::check_lambda_mu(lambda, mu, "g_bound");
  const double s = lambda + mu - 1.0;
  const double m = std::min({1.0 / (mu * (1.0 + lambda / 4.0 + mu)), 1.0 / (lambda * (1.0 + lambda + mu / 4.0)),
                             1.0 / (lambda * mu)});
  return 0.25 * s * s * m;
}

/// max |[u,v,x]| / |[u,v,p]| over vertices x of C beyond the chord.
inline double alpha_of_section(const SectorConfig& cfg) {
  const double height = cfg.lambda + cfg.mu - 1.0;
  if (!(height > 0.0)) return 0.0;
  double a = 0.0;
  for (const auto& c : cfg.section.vertices()) a = std::max(a, (c.x + c.y - 1.0) / height);
  return std::min(a, 1.0);
}

inline double lemma2_gamma(double lambda, double mu) {
  detail::check_lambda_mu(lambda, mu, "lemma2_gamma");
  return 3.0 * (lambda + mu) / std::min(lambda, mu) * (1.0 + std::sqrt(lambda + mu));
}

inline SectorReport lemma4_check(const SectorConfig& cfg) {
  SectorReport r;
  r.product = sector_product(cfg);
  r.bound_f = f_bound(cfg.lambda, cfg.mu);
  r.g = g_bound(cfg.lambda, cfg.mu);
  r.alpha = alpha_of_section(cfg);
  r.gamma = lemma2_gamma(cfg.lambda, cfg.mu);
  r.pass = r.product >= r.bound_f + r.g * r.alpha * (1.0 - r.alpha) - 1e-9;
  return r;
}

/// The roots alpha_-, alpha_+ of alpha (1 - alpha) = f eps / g.
inline std::pair<double, double> corollary5_thresholds(double lambda, double mu, double eps) {
  const double f = f_bound(lambda, mu), g = g_bound(lambda, mu);
  if (!(eps > 0.0) || !(eps < g / (4.0 * f)))
    throw InvalidParameter("corollary5_thresholds: eps must lie in (0, g/(4f))");
  const double r = std::sqrt(1.0 - 4.0 * f / g * eps);
  return {(1.0 - r) / 2.0, (1.0 + r) / 2.0};
}

/// Checks which branch of the sector stability dichotomy holds.
inline SectorReport lemma2_dichotomy(const SectorConfig& cfg, double eps) {
  const double l = cfg.lambda, m = cfg.mu;
  if (!(eps > 0.0) || !(eps < std::min(l, m) / (l + m)))
    throw InvalidParameter("lemma2_dichotomy: eps must lie in (0, min(lambda, mu)/(lambda + mu))");
  SectorReport r = lemma4_check(cfg);
  if (!(r.product <= (1.0 + eps) * r.bound_f * (1.0 + 1e-12)))
    throw InvalidParameter("lemma2_dichotomy: product exceeds (1 + eps) f");
  const double s = 1.0 + r.gamma * eps;
  const double slack = 1e-9 * diameter(cfg.section);
  const bool inner = std::all_of(cfg.section.vertices().begin(), cfg.section.vertices().end(), [&](const Point2& c) {
    return c.x >= -slack && c.y >= -slack && c.x + c.y <= s + slack;
  });
  const bool outer = contains(cfg.section, cfg.p() / s, slack);
  r.dichotomy = inner ? Dichotomy::InnerClose : outer ? Dichotomy::OuterClose : Dichotomy::Neither;
  r.pass = r.pass && *r.dichotomy != Dichotomy::Neither;
  return r;
}

/// Seeded section: hull of {o, u, v} and points of [u, v, p] whose largest
/// level above the chord is a chosen alpha; some draws lie on [u, p] or [v, p]
/// to cover the one-extra-vertex family.
inline SectorConfig random_sector_config(Rng& rng, double lambda, double mu) {
  const Point2 u{1, 0}, v{0, 1}, p{lambda, mu};
  const int mode = rng.integer(0, 5);
  std::vector<Point2> extra;
  if (mode == 1) {
    extra.push_back(p);
  } else if (mode == 2 || mode == 3) {
    const double a = rng.uniform();
    extra.push_back((mode == 2 ? u : v) * (1.0 - a) + p * a);
  } else if (mode >= 4) {
    const double top = rng.uniform();
    const int count = rng.integer(1, 4);
    for (int i = 0; i < count; ++i) {
      const double level = i == 0 ? top : top * rng.uniform();
      const double w = rng.uniform();
      extra.push_back((u * w + v * (1.0 - w)) * (1.0 - level) + p * level);
    }
  }
  return make_sector_config(lambda, mu, extra);
}

}  // namespace volprod
