#pragma once

// Verdicts for the stability theorems: measured excess eps of a product over
// its minimum, the sandwich ratio it controls, and the centre distance after
// the renormalization each statement prescribes.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "volprod/canonical.hpp"
#include "volprod/geometry.hpp"
#include "volprod/polarity.hpp"
#include "volprod/santalo.hpp"
#include "volprod/sectors.hpp"

namespace volprod {

enum class Theorem { T1, T2, T3, T5, T6, L7 };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::T1: return "t1";
    case Theorem::T2: return "t2";
    case Theorem::T3: return "t3";
    case Theorem::T5: return "t5";
    case Theorem::T6: return "t6";
    case Theorem::L7: return "l7";
  }
  return "";
}

inline std::optional<Theorem> theorem_from_string(const std::string& s) {
  for (Theorem t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T5, Theorem::T6, Theorem::L7})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

/// For T1, T2, T5, T6 bm_upper is the sandwich ratio and claimed is 1 + c eps.
/// For T3 and L7, which are lower bounds, bm_upper holds bound / product and
/// claimed is 1, so pass still reads bm_upper <= claimed.
struct TheoremVerdict {
  Theorem theorem = Theorem::T1;
  double eps = 0.0;
  double bm_upper = 0.0;
  double claimed = 0.0;
  std::optional<double> centre_distance;
  std::optional<double> centre_claimed;
  bool pass = false;
  double product = 0.0;
  double minimum = 0.0;
  /// The inscribed model body used by the sandwich was not unique.
  bool tie = false;
};

namespace detail {

inline constexpr double verdict_slack = 1e-9;

inline void finish(TheoremVerdict& v) {
  v.pass = v.eps >= -verdict_slack && v.bm_upper <= v.claimed + verdict_slack;
  if (v.centre_distance && v.centre_claimed) v.pass = v.pass && *v.centre_distance <= *v.centre_claimed + verdict_slack;
}

/// ||B (mid - z)|| with B = scale * (2/(lambda1+lambda2)) A^{-1}.
inline double normalized_centre_distance(const SandwichCertificate& cert, const Point2& mid, const Point2& z,
                                         double model_scale) {
  const LinearMap2 inv = cert.map.linear_part().inverse();
  const Point2 d = inv.apply_linear(mid - z) * (model_scale * 2.0 / (cert.lambda1 + cert.lambda2));
  return norm(d);
}

/// Stability verdict for a body symmetric about `sym_centre` (or any body
/// when the model is the triangle), polarity centre z.
inline TheoremVerdict stability_verdict(Theorem th, const ConvexPolygon& k, const Point2& z, double minimum,
                                        double body_constant, double centre_constant, double ratio_cap,
                                        Model model, const Point2& sym_centre, double model_scale) {
  TheoremVerdict v;
  v.theorem = th;
  v.minimum = minimum;
  v.product = volume_product(CenteredBody(k, z)).product;
  v.eps = v.product / minimum - 1.0;
  const double e = std::max(v.eps, 0.0);
  const SandwichCertificate cert = sandwich(translate(k, -sym_centre), model);
  v.tie = cert.tie;
  v.bm_upper = cert.ratio();
  v.claimed = 1.0 + body_constant * e;
  if (v.bm_upper <= v.claimed && v.claimed < ratio_cap) {
    const Point2 mid = cert.mid_centre() + sym_centre;
    v.centre_distance = normalized_centre_distance(cert, mid, z, model_scale);
    v.centre_claimed = centre_constant * std::sqrt(e);
  }
  finish(v);
  return v;
}

inline double model_diameter(Model m) { return diameter(canonical_model(m)); }

}  // namespace detail

/// o-symmetric case: |K||K*| >= 8, parallelogram sandwich within 1 + 200 eps,
/// centre within 336 sqrt(eps). K may be symmetric about any point; the
/// product is taken at `centre`, by default the centre of symmetry.
inline TheoremVerdict verify_theorem1(const ConvexPolygon& k, std::optional<Point2> centre = std::nullopt) {
  const Point2 c = centroid(k);
  if (!is_centrally_symmetric(k, c)) throw NotSymmetric("theorem t1 needs a centrally symmetric body");
  const Model m = Model::parallelogram();
  return detail::stability_verdict(Theorem::T1, k, centre.value_or(c), 8.0, 200.0, 336.0, 2.0, m, c,
                                   1.0 / detail::model_diameter(m));
}

/// General case: |K||K*| >= 27/4 with the product taken at `centre`, by
/// default the Santalo point; triangle sandwich within 1 + 900 eps, centre
/// within 917 sqrt(eps).
inline TheoremVerdict verify_theorem2(const ConvexPolygon& k, std::optional<Point2> centre = std::nullopt) {
  const Point2 z = centre ? *centre : santalo_point(k).point;
  // M0 has circumradius 1, hence side sqrt(3).
  return detail::stability_verdict(Theorem::T2, k, z, 27.0 / 4.0, 900.0, 917.0, 4.0, Model::triangle(), {},
                                   1.0 / std::sqrt(3.0));
}

/// n-fold symmetric case: |K||K*| >= n^2 sin^2(pi/n), similarity sandwich
/// within 1 + 18 eps, centre within 263 sqrt(eps).
inline TheoremVerdict verify_theorem5(const ConvexPolygon& k, int n, std::optional<Point2> centre = std::nullopt) {
  if (n < 3) throw InvalidParameter("theorem t5 needs n >= 3");
  const Point2 c = centroid(k);
  if (!is_nfold_symmetric(translate(k, -c), n)) throw NotSymmetric("body lacks the requested rotational symmetry");
  const double s = std::sin(std::numbers::pi / n);
  const Model m = Model::regular(n);
  return detail::stability_verdict(Theorem::T5, k, centre.value_or(c), n * n * s * s, 18.0, 263.0,
                                   1.0 / std::cos(std::numbers::pi / n), m, c, 1.0 / detail::model_diameter(m));
}

/// Eggleston case: |K||((K-K)/2)^*| >= 6, triangle sandwich within 1 + 87 eps.
inline TheoremVerdict verify_theorem6(const ConvexPolygon& k) {
  TheoremVerdict v;
  v.theorem = Theorem::T6;
  v.minimum = 6.0;
  v.product = eggleston_product(k);
  v.eps = v.product / 6.0 - 1.0;
  const SandwichCertificate cert = sandwich(k, Model::triangle());
  v.tie = cert.tie;
  v.bm_upper = cert.ratio();
  v.claimed = 1.0 + 87.0 * std::max(v.eps, 0.0);
  detail::finish(v);
  return v;
}

struct Theorem3Report {
  TheoremVerdict verdict;
  int n = 0;
  /// Distances from the polarity centre to the side lines of K_o.
  std::vector<double> d;
  double a = 0.0, b = 0.0;
  std::vector<double> sector_products;
  std::vector<double> sector_bounds;
  /// product >= n^2 (prod |C_j||C_j*|)^{1/n} >= ... >= n^2 sin^2(pi/n).
  std::array<double, 5> chain{};
  /// Sector diagnostics need the centre inside K_i.
  bool diagnostics = false;
};

namespace detail {

inline bool is_regular_polygon(const ConvexPolygon& p, double t) {
  const Point2 c = centroid(p);
  const double r = norm(p[0] - c), s = norm(p.edge(0));
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(norm(p[i] - c) - r) > t * r || std::abs(norm(p.edge(i)) - s) > t * s) return false;
  return true;
}

}  // namespace detail

/// K_i in K in K_o for regular n-gons K_i, K_o with every vertex of K_i on a
/// side of K_o; the product about `centre` is at least n^2 sin^2(pi/n).
inline Theorem3Report verify_theorem3(const ConvexPolygon& k, const ConvexPolygon& ki, const ConvexPolygon& ko,
                                      const Point2& centre) {
  const std::size_t n = ki.size();
  if (ko.size() != n || n < 3) throw HypothesisViolated("K_i and K_o must be n-gons with the same n >= 3");
  if (!detail::is_regular_polygon(ki, 1e-9) || !detail::is_regular_polygon(ko, 1e-9))
    throw HypothesisViolated("K_i and K_o must be regular");
  const double t = 1e-9 * diameter(ko);
  // x_j is the vertex of K_i on side [y_j, y_{j+1}] of K_o.
  std::vector<Point2> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    bool found = false;
    for (const auto& q : ki.vertices())
      if (detail::on_segment(q, ko.vertex(j), ko.vertex(j + 1), t)) {
        x[j] = q;
        found = true;
        break;
      }
    if (!found) throw HypothesisViolated("side " + std::to_string(j) + " of K_o carries no vertex of K_i");
  }
  if (!contains(k, ki, t) || !contains(ko, k, t)) throw HypothesisViolated("K_i in K in K_o fails");
  std::optional<CenteredBody> body;
  try {
    body.emplace(k, centre);
  } catch (const CentreNotInterior& e) {
    throw HypothesisViolated(std::string("centre must be interior to K: ") + e.what());
  }

  Theorem3Report r;
  r.n = static_cast<int>(n);
  const double nn = static_cast<double>(n);
  const double s = std::sin(std::numbers::pi / nn);
  TheoremVerdict& v = r.verdict;
  v.theorem = Theorem::T3;
  v.minimum = nn * nn * s * s;
  v.product = volume_product(*body).product;
  v.eps = v.product / v.minimum - 1.0;
  v.bm_upper = v.minimum / v.product;
  v.claimed = 1.0;
  detail::finish(v);

  if (interior_margin(ki, centre) > t) {
    r.diagnostics = true;
    const ConvexPolygon kstar = polar(*body);
    r.a = distance(x[n - 1], ko.vertex(0));
    r.b = distance(x[0], ko.vertex(0));
    std::vector<Point2> ystar(n);
    for (std::size_t j = 0; j < n; ++j) {
      const HalfPlane h = ko.edge_half_plane(j);
      r.d.push_back(-h.signed_distance(centre));
      ystar[j] = h.normal / r.d.back();
    }
    const double sin2 = std::sin(2.0 * std::numbers::pi / nn);
    double log_sectors = 0.0, log_bounds = 0.0, log_d = 0.0, sum_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t jm = (j + n - 1) % n;
      // Sector j has apex y_j between x_{j-1} and x_j.
      const ConvexPolygon cj = clip_sector(k, centre, x[jm] - centre, x[j] - centre);
      const ConvexPolygon cjs = clip_sector(kstar, {}, ystar[jm], ystar[j]);
      const double prod = area(cj) * area(cjs);
      const double bound = (r.a * r.d[jm] + r.b * r.d[j]) * sin2 / (4.0 * r.d[jm] * r.d[j]);
      r.sector_products.push_back(prod);
      r.sector_bounds.push_back(bound);
      log_sectors += std::log(prod);
      log_bounds += std::log(bound * 4.0 / sin2);
      log_d += std::log(r.d[j]);
      sum_d += r.d[j];
    }
    r.chain[0] = v.product;
    r.chain[1] = nn * nn * std::exp(log_sectors / nn);
    r.chain[2] = nn * nn * sin2 / 4.0 * std::exp(log_bounds / nn);
    r.chain[3] = nn * nn * (r.a + r.b) * sin2 / 4.0 * std::exp(-log_d / nn);
    r.chain[4] = nn * nn * nn * (r.a + r.b) * sin2 / (4.0 * sum_d);
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j)
      ok = ok && r.sector_products[j] >= r.sector_bounds[j] * (1.0 - detail::verdict_slack);
    for (std::size_t i = 0; i + 1 < r.chain.size(); ++i)
      ok = ok && r.chain[i] >= r.chain[i + 1] * (1.0 - detail::verdict_slack);
    v.pass = v.pass && ok;
  }
  return r;
}

struct Lemma7Report {
  std::array<double, 3> alphas{};
  double alpha = 0.0;
  double bound = 0.0;
  double product = 0.0;
  /// |K_i'| directly and by its closed form.
  double inner_area = 0.0, inner_area_formula = 0.0;
  /// |((K_o' - K_o')/2)^*| directly and by its closed form.
  double outer_polar = 0.0, outer_polar_formula = 0.0;
  /// product >= |K_i'||((K_o'-K_o')/2)^*| = 2(1+3a)(3+3a)/prod(1+a_i)
  ///         >= 6(1+3a)/(1+a)^2 >= 6 + (3/2) a (1 - a).
  std::array<double, 5> chain{};
  bool pass = false;
  TheoremVerdict verdict;
};

/// Eggleston refinement for K_i in K in K_o, K_i a triangle and K_o the
/// triangle with side midpoints at the vertices of K_i.
inline Lemma7Report lemma7_check(const ConvexPolygon& k, const ConvexPolygon& ki) {
  if (ki.size() != 3) throw HypothesisViolated("K_i must be a triangle");
  const Point2 ap = ki[0], bp = ki[1], cp = ki[2];
  const std::array<Point2, 3> outer{bp + cp - ap, cp + ap - bp, ap + bp - cp};
  const ConvexPolygon ko = make_polygon({outer[0], outer[1], outer[2]});
  const double t = 1e-9 * diameter(ko);
  if (!contains(k, ki, t) || !contains(ko, k, t)) throw HypothesisViolated("K_i in K in K_o fails");

  // Carry K_o to the regular triangle of side 2 centred at o.
  const double rad = 2.0 / std::sqrt(3.0);
  const std::array<Point2, 3> target{unit_vector(std::numbers::pi / 2.0) * rad,
                                     unit_vector(std::numbers::pi / 2.0 + 2.0 * std::numbers::pi / 3.0) * rad,
                                     unit_vector(std::numbers::pi / 2.0 + 4.0 * std::numbers::pi / 3.0) * rad};
  const LinearMap2 phi = detail::affine_from_triangles(outer, target);
  const ConvexPolygon kn = apply_map(k, phi);
  const std::array<Point2, 3> corner = target;
  std::array<Point2, 3> mid{};  // mid[i] is the midpoint opposite corner i
  for (int i = 0; i < 3; ++i) mid[i] = (corner[(i + 1) % 3] + corner[(i + 2) % 3]) * 0.5;

  Lemma7Report r;
  std::vector<Point2> inner_pts;
  std::vector<HalfPlane> cuts;
  for (int i = 0; i < 3; ++i) {
    const Point2 nrm = normalized(corner[i]);
    const double h = support(kn, nrm);
    const double base = dot(nrm, mid[(i + 1) % 3]);
    r.alphas[i] = std::clamp((h - base) / (dot(nrm, corner[i]) - base), 0.0, 1.0);
    inner_pts.push_back(mid[i]);
    inner_pts.push_back(kn[support_vertex(kn, nrm)]);
    cuts.push_back({nrm, h});
  }
  r.alpha = (r.alphas[0] + r.alphas[1] + r.alphas[2]) / 3.0;
  r.bound = 6.0 + 1.5 * r.alpha * (1.0 - r.alpha);
  r.product = eggleston_product(k);

  const ConvexPolygon inner = make_polygon(inner_pts);
  const ConvexPolygon outer_hex = clip(make_polygon({corner[0], corner[1], corner[2]}), cuts);
  r.inner_area = area(inner);
  r.inner_area_formula = std::sqrt(3.0) / 4.0 * (1.0 + r.alphas[0] + r.alphas[1] + r.alphas[2]);
  r.outer_polar = polar_area(CenteredBody(central_symmetral(outer_hex)));
  const std::array<double, 3> q{1.0 + r.alphas[0], 1.0 + r.alphas[1], 1.0 + r.alphas[2]};
  const double pair_sum = 1.0 / (q[0] * q[1]) + 1.0 / (q[1] * q[2]) + 1.0 / (q[2] * q[0]);
  r.outer_polar_formula = 2.0 * (16.0 / 3.0) * pair_sum * std::sin(std::numbers::pi / 3.0) / 2.0;

  const double a = r.alpha;
  r.chain[0] = r.product;
  r.chain[1] = r.inner_area * r.outer_polar;
  r.chain[2] = 2.0 * (1.0 + 3.0 * a) * (3.0 + 3.0 * a) / (q[0] * q[1] * q[2]);
  r.chain[3] = 6.0 * (1.0 + 3.0 * a) / ((1.0 + a) * (1.0 + a));
  r.chain[4] = r.bound;
  r.pass = true;
  for (std::size_t i = 0; i + 1 < r.chain.size(); ++i)
    r.pass = r.pass && r.chain[i] >= r.chain[i + 1] - detail::verdict_slack * r.chain[i + 1];

  TheoremVerdict& v = r.verdict;
  v.theorem = Theorem::L7;
  v.product = r.product;
  v.minimum = r.bound;
  v.eps = r.product / 6.0 - 1.0;
  v.bm_upper = r.bound / r.product;
  v.claimed = 1.0;
  detail::finish(v);
  v.pass = v.pass && r.pass;
  return r;
}

/// Lemma 7 check with K_i the maximal-area inscribed triangle of K.
inline Lemma7Report lemma7_check(const ConvexPolygon& k) {
  return lemma7_check(k, max_area_inscribed_triangle(k));
}

/// Pairwise ratios of a tuple whose arithmetic/geometric mean ratio is at
/// most 1 + eps are at least 1 - 2 sqrt(n eps).
inline bool agm_stability_check(const std::vector<double>& values, double eps) {
  if (values.empty()) throw InvalidParameter("agm_stability_check needs values");
  double sum = 0.0, log_sum = 0.0;
  for (double x : values) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidParameter("agm_stability_check needs positive entries");
    sum += x;
    log_sum += std::log(x);
  }
  const double n = static_cast<double>(values.size());
  const double ratio = (sum / n) / std::exp(log_sum / n);
  if (!(eps >= 0.0) || ratio > (1.0 + eps) * (1.0 + 1e-12))
    throw InvalidParameter("agm_stability_check: mean ratio exceeds 1 + eps");
  const double bound = 1.0 - 2.0 * std::sqrt(n * eps);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *lo / *hi >= bound - 1e-12;
}

struct CentreStabilityConstants {
  double eps1 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double body_area = 0.0;
  double body_diam = 0.0;
};

inline CentreStabilityConstants centre_constants(const ConvexPolygon& k0) {
  CentreStabilityConstants c;
  c.body_area = area(k0);
  c.body_diam = diameter(k0);
  const double pi = std::numbers::pi, d = c.body_diam, a = c.body_area;
  c.eps1 = std::min(0.5, a / (32.0 * pi * pi * d * d));
  c.c1 = 2.0 * std::pow(pi, 4) * std::pow(d, 9) / std::pow(a, 4);
  c.c2 = 4.0 * std::sqrt(2.0 / (3.0 * pi)) * d * d / std::sqrt(a);
  return c;
}

struct Lemma6Report {
  double santalo_gap = 0.0;
  double santalo_bound = 0.0;
  double centre_gap = 0.0;
  double centre_bound = 0.0;
  bool pass = false;
};

/// Santalo point stability: for (1 - eps1) K0 + a in K in (1 + eps1) K0 + b,
/// ||s(K) - s(K0)|| <= c1 eps1; with the product hypotheses on (c, eps2),
/// ||c - s(K0)|| <= c1 eps1 + c2 sqrt(eps2).
inline Lemma6Report lemma6_check(const ConvexPolygon& k0, const ConvexPolygon& k, double eps1, const Point2& c,
                                 double eps2) {
  const CentreStabilityConstants cs = centre_constants(k0);
  if (!(eps1 > 0.0) || eps1 > cs.eps1) throw HypothesisViolated("eps1 must lie in (0, eps1(K0)]");
  if (!(eps2 >= 0.0)) throw HypothesisViolated("eps2 must be nonnegative");
  const double slack = 1e-12;
  if (largest_homothet(k0.vertices(), k).scale < (1.0 - eps1) * (1.0 - slack))
    throw HypothesisViolated("(1 - eps1) K0 + a in K fails");
  if (1.0 / largest_homothet(k.vertices(), k0).scale > (1.0 + eps1) * (1.0 + slack))
    throw HypothesisViolated("K in (1 + eps1) K0 + b fails");
  const SantaloResult s0 = santalo_point(k0);
  const SantaloResult s = santalo_point(k);
  Lemma6Report r;
  r.santalo_gap = distance(s.point, s0.point);
  r.santalo_bound = cs.c1 * eps1;

  if (!contains(k, c) || interior_margin(k, c) <= tol::centre * diameter(k))
    throw HypothesisViolated("c must be interior to K");
  const double p0 = area(k0) * s0.polar_area_at_min;
  const double p = area(k) * s.polar_area_at_min;
  const double pc = area(k) * polar_area(CenteredBody(k, c));
  const double pi2 = std::numbers::pi * std::numbers::pi;
  if (p0 > p * (1.0 + slack)) throw HypothesisViolated("|K0||(K0 - s(K0))*| <= |K||(K - s(K))*| fails");
  if (pc > (p0 + eps2) * (1.0 + slack)) throw HypothesisViolated("|K||(K - c)*| <= |K0||(K0 - s(K0))*| + eps2 fails");
  if (p0 + eps2 > pi2) throw HypothesisViolated("|K0||(K0 - s(K0))*| + eps2 <= pi^2 fails");
  r.centre_gap = distance(c, s0.point);
  r.centre_bound = cs.c1 * eps1 + cs.c2 * std::sqrt(eps2);
  r.pass = r.santalo_gap <= r.santalo_bound + 1e-9 && r.centre_gap <= r.centre_bound + 1e-9;
  return r;
}

struct Example2Result {
  double offset_needed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Regular n-gon of diameter 1. Bisection along (0,1) for the smallest offset
/// x with |K||(K - x)^*| >= (1 + eps) n^2 sin^2(pi/n), to relative 1e-6.
inline Example2Result example2_centre_lower(int n, double eps) {
  if (n < 3) throw InvalidParameter("example2 needs n >= 3");
  if (!(eps > 0.0)) throw InvalidParameter("example2 needs eps > 0");
  const double pi = std::numbers::pi;
  const double r = n % 2 == 0 ? 0.5 : 0.5 / std::cos(pi / (2.0 * n));
  const ConvexPolygon k = regular_ngon(n, r, 0.0);
  const double target = (1.0 + eps) * n * n * std::sin(pi / n) * std::sin(pi / n);
  const double body = area(k);
  const Point2 dir{0.0, 1.0};
  const double reach = interior_margin(k, {});
  auto value = [&](double t) { return body * polar_area(CenteredBody(k, dir * t)); };
  double lo = 0.0, hi = reach * (1.0 - 1e-6);
  if (value(hi) < target) throw NoConvergence("example2: target product not reached inside the body");
  int it = 0;
  for (; it < 200 && hi - lo > 1e-6 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) >= target ? hi : lo) = mid;
  }
  if (it == 200) throw NoConvergence("example2: bisection did not converge");
  Example2Result res;
  res.offset_needed = hi;
  res.bound = std::sqrt(eps) * std::sqrt(2.0) / (16.0 * pi);
  res.pass = res.offset_needed >= res.bound || res.offset_needed >= 1.0 / (4.0 * std::sqrt(3.0));
  return res;
}

}  // namespace volprod
