#pragma once

// Verification suites and parameter sweeps behind the CLI: body families per
// theorem, report rows, CSV rendering, and an index-ordered parallel map.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "volprod/canonical.hpp"
#include "volprod/io.hpp"
#include "volprod/random.hpp"
#include "volprod/sectors.hpp"
#include "volprod/stability.hpp"

namespace volprod {

/// Worker count: hardware concurrency, capped by VOLPROD_THREADS.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VOLPROD_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// out[i] = fn(i) for i < count, evaluated concurrently; order is by index.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn, unsigned workers = worker_count()) {
  std::vector<std::optional<T>> slots(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) slots[i].emplace(fn(i));
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < std::min<std::size_t>(workers, count); ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct SuiteItem {
  std::string family;
  std::uint64_t seed = 0;
  ConvexPolygon body;
  std::optional<Point2> centre;
  /// Theorem t3: the regular pair; lemma l7: an explicit inscribed triangle.
  std::optional<ConvexPolygon> ki, ko;
  /// Symmetry order for t5, polygon order for t3.
  int n = 0;
};

struct ReportRow {
  std::vector<std::string> cells;
  bool pass = false;
};

inline constexpr std::array<double, 4> example1_grid{1e-4, 1e-3, 1e-2, 1e-1};

namespace detail {

inline double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

/// Interior point near `c`: offset whose length is a random fraction of diam.
inline Point2 probe_centre(const ConvexPolygon& k, const Point2& c, Rng& rng) {
  const double d = diameter(k);
  const Point2 dir = unit_vector(rng.uniform(0.0, 2.0 * std::numbers::pi));
  double len = d * log_uniform(rng, 1e-4, 3e-2);
  while (interior_margin(k, c + dir * len) < 1e-3 * d) len *= 0.5;
  return c + dir * len;
}

inline SuiteItem item(std::string family, std::uint64_t seed, ConvexPolygon body, int n = 0) {
  return SuiteItem{std::move(family), seed, std::move(body), std::nullopt, std::nullopt, std::nullopt, n};
}

inline int t5_order(std::optional<int> n, std::size_t index) {
  static constexpr std::array<int, 4> orders{3, 5, 6, 8};
  return n ? *n : orders[index % orders.size()];
}

/// Regular pair for t3: K_o = R_n with a random phase, K_i through the points
/// at parameter t along its sides.
inline std::pair<ConvexPolygon, ConvexPolygon> t3_pair(int n, double phase, double t) {
  const std::vector<Point2> y = regular_ngon_points(n, 1.0, phase);
  std::vector<Point2> x;
  for (std::size_t j = 0; j < y.size(); ++j) x.push_back(y[j] + (y[(j + 1) % y.size()] - y[j]) * t);
  return {make_polygon(x), make_polygon(y)};
}

inline SuiteItem t3_item(std::string family, std::uint64_t seed, int n, double phase, double t, int mode, Rng& rng) {
  auto [ki, ko] = t3_pair(n, phase, t);
  std::vector<Point2> pts(ki.vertices().begin(), ki.vertices().end());
  if (mode == 1) pts.assign(ko.vertices().begin(), ko.vertices().end());
  if (mode == 2) {
    // Points in the corner triangles [x_{j-1}, y_j, x_j].
    for (std::size_t j = 0; j < ko.size(); ++j) {
      if (rng.uniform() < 0.3) continue;
      const Point2 y = ko[j];
      double a = rng.uniform(), b = rng.uniform();
      if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
      }
      const Point2 xa = y + (ko.vertex(j + ko.size() - 1) - y) * (1.0 - t);
      const Point2 xb = y + (ko.vertex(j + 1) - y) * t;
      pts.push_back(y * (1.0 - a - b) + xa * a + xb * b);
    }
  }
  SuiteItem it{std::move(family), seed, make_polygon(pts), std::nullopt, ki, ko, n};
  it.centre = Point2{};
  return it;
}

}  // namespace detail

/// Canonical bodies, Example 1 grids, then `count` seeded items.
inline std::vector<SuiteItem> build_verify_suite(Theorem th, std::uint64_t seed, std::size_t count,
                                                 std::optional<int> order = std::nullopt) {
  std::vector<SuiteItem> items;
  const auto square = make_polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  auto bumped_grid = [&](int n) {
    for (double e : example1_grid)
      if (e <= bumped_ngon_max_eps(n))
        items.push_back(detail::item("bumped" + std::to_string(n) + ":" + format_double(e), 0, bumped_ngon(n, e), n));
  };
  switch (th) {
    case Theorem::T1:
      items.push_back(detail::item("square", 0, square));
      for (int n : {4, 6, 8}) items.push_back(detail::item("regular" + std::to_string(n), 0, regular_ngon(n)));
      for (int n : {4, 6, 8}) bumped_grid(n);
      break;
    case Theorem::T2:
    case Theorem::T6:
      items.push_back(detail::item("triangle", 0, regular_ngon(3)));
      items.push_back(detail::item("right-triangle", 0, make_polygon({{0, 0}, {1, 0}, {0, 1}})));
      items.push_back(detail::item("square", 0, square));
      for (int n : {5, 6}) items.push_back(detail::item("regular" + std::to_string(n), 0, regular_ngon(n)));
      bumped_grid(3);
      bumped_grid(4);
      break;
    case Theorem::T5:
      for (int n : order ? std::vector<int>{*order} : std::vector<int>{3, 4, 5, 6, 8}) {
        items.push_back(detail::item("regular" + std::to_string(n), 0, regular_ngon(n), n));
        bumped_grid(n);
      }
      break;
    case Theorem::T3: {
      Rng rng(seed);
      for (int n : {3, 4, 6}) {
        items.push_back(detail::t3_item("equal-inner" + std::to_string(n), 0, n, 0.0, 0.5, 0, rng));
        items.push_back(detail::t3_item("equal-outer" + std::to_string(n), 0, n, 0.0, 0.5, 1, rng));
      }
      break;
    }
    case Theorem::L7: {
      const ConvexPolygon ko = regular_ngon(3, 2.0 / std::sqrt(3.0), std::numbers::pi / 2.0);
      const ConvexPolygon ki = scale(ko, -0.5);
      SuiteItem outer = detail::item("outer-triangle", 0, ko);
      outer.ki = ki;
      items.push_back(outer);
      SuiteItem inner = detail::item("inner-triangle", 0, ki);
      inner.ki = ki;
      items.push_back(inner);
      std::vector<Point2> hex(ki.vertices().begin(), ki.vertices().end());
      for (const auto& c : ko.vertices()) hex.push_back(c * 0.625);
      SuiteItem half = detail::item("alpha-half", 0, make_polygon(hex));
      half.ki = ki;
      items.push_back(half);
      bumped_grid(3);
      break;
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = item_seed(seed, i);
    Rng rng(s ^ 0xD1B54A32D192ED03ULL);
    const std::size_t fam = i % 3;
    switch (th) {
      case Theorem::T1: {
        ConvexPolygon k = fam == 1 || (fam == 2 && rng.uniform() < 0.5)
                              ? perturbed_model(s, Model::parallelogram(), detail::log_uniform(rng, 1e-4, 0.1))
                              : random_body(s, rng.integer(3, 8), Symmetry::central());
        SuiteItem it = detail::item(fam == 0 ? "central" : fam == 1 ? "perturbed" : "probe", s, k);
        if (fam == 2) it.centre = detail::probe_centre(k, centroid(k), rng);
        items.push_back(std::move(it));
        break;
      }
      case Theorem::T2:
      case Theorem::T6: {
        const bool perturbed = fam == 1 || (th == Theorem::T2 && fam == 2 && rng.uniform() < 0.5);
        ConvexPolygon k = perturbed ? perturbed_model(s, Model::triangle(), detail::log_uniform(rng, 1e-4, 0.1))
                                    : random_body(s, rng.integer(3, 10));
        const bool probe = th == Theorem::T2 && fam == 2;
        SuiteItem it = detail::item(fam == 0 ? "random" : fam == 1 ? "perturbed" : probe ? "probe" : "random", s, k);
        if (probe) it.centre = detail::probe_centre(k, santalo_point(k).point, rng);
        items.push_back(std::move(it));
        break;
      }
      case Theorem::T5: {
        const int n = detail::t5_order(order, i / 3);
        ConvexPolygon k = fam == 1 || (fam == 2 && rng.uniform() < 0.5)
                              ? perturbed_model(s, Model::regular(n), detail::log_uniform(rng, 1e-4, 0.1))
                              : random_body(s, rng.integer(3, 5), Symmetry::nfold(n));
        SuiteItem it = detail::item(fam == 0 ? "nfold" : fam == 1 ? "perturbed" : "probe", s, k, n);
        if (fam == 2) it.centre = detail::probe_centre(k, centroid(k), rng);
        items.push_back(std::move(it));
        break;
      }
      case Theorem::T3: {
        const int n = order ? *order : rng.integer(3, 8);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double t = rng.uniform(0.05, 0.95);
        const int mode = fam == 0 ? 2 : rng.integer(0, 2);
        SuiteItem it = detail::t3_item(mode == 0 ? "inner" : mode == 1 ? "outer" : "between", s, n, phase, t, mode, rng);
        // Centre: the common centre, a point inside K_i, or any interior point of K.
        const double pick = rng.uniform();
        const ConvexPolygon& ki = *it.ki;
        if (pick < 0.6) {
          const double w = rng.uniform(0.0, 0.8);
          it.centre = ki[static_cast<std::size_t>(rng.integer(0, n - 1))] * w;
        } else if (pick < 0.8) {
          const double w = rng.uniform(0.0, 0.95);
          it.centre = it.body[static_cast<std::size_t>(rng.integer(0, static_cast<int>(it.body.size()) - 1))] * w;
        }
        items.push_back(std::move(it));
        break;
      }
      case Theorem::L7: {
        ConvexPolygon k = fam == 1 ? perturbed_model(s, Model::triangle(), detail::log_uniform(rng, 1e-4, 0.5))
                                   : random_body(s, rng.integer(3, 10));
        items.push_back(detail::item(fam == 1 ? "perturbed" : "random", s, k));
        break;
      }
    }
  }
  return items;
}

inline std::vector<std::string> verify_header(Theorem th) {
  switch (th) {
    case Theorem::T3:
      return {"index", "family", "seed", "n", "eps", "bm_upper", "claimed", "diagnostics",
              "chain0", "chain1", "chain2", "chain3", "chain4", "pass"};
    case Theorem::L7:
      return {"index", "family", "seed", "eps", "alpha", "bound", "product",
              "chain0", "chain1", "chain2", "chain3", "chain4", "pass"};
    default:
      return {"index", "family", "seed", "eps", "bm_upper", "claimed", "centre_distance", "centre_claimed", "tie",
              "pass"};
  }
}

inline ReportRow evaluate_item(Theorem th, std::size_t index, const SuiteItem& it) {
  ReportRow row;
  auto& c = row.cells;
  c = {std::to_string(index), it.family, std::to_string(it.seed)};
  auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  switch (th) {
    case Theorem::T1:
    case Theorem::T2:
    case Theorem::T5:
    case Theorem::T6: {
      const TheoremVerdict v = th == Theorem::T1   ? verify_theorem1(it.body, it.centre)
                               : th == Theorem::T2 ? verify_theorem2(it.body, it.centre)
                               : th == Theorem::T5 ? verify_theorem5(it.body, it.n, it.centre)
                                                   : verify_theorem6(it.body);
      for (const auto& s : {format_double(v.eps), format_double(v.bm_upper), format_double(v.claimed),
                            opt(v.centre_distance), opt(v.centre_claimed), std::string(v.tie ? "1" : "0")})
        c.push_back(s);
      row.pass = v.pass;
      break;
    }
    case Theorem::T3: {
      const Theorem3Report r = verify_theorem3(it.body, *it.ki, *it.ko, it.centre.value_or(Point2{}));
      c.push_back(std::to_string(r.n));
      c.push_back(format_double(r.verdict.eps));
      c.push_back(format_double(r.verdict.bm_upper));
      c.push_back(format_double(r.verdict.claimed));
      c.push_back(r.diagnostics ? "1" : "0");
      for (double x : r.chain) c.push_back(r.diagnostics ? format_double(x) : std::string());
      row.pass = r.verdict.pass;
      break;
    }
    case Theorem::L7: {
      const Lemma7Report r = it.ki ? lemma7_check(it.body, *it.ki) : lemma7_check(it.body);
      c.push_back(format_double(r.verdict.eps));
      c.push_back(format_double(r.alpha));
      c.push_back(format_double(r.bound));
      c.push_back(format_double(r.product));
      for (double x : r.chain) c.push_back(format_double(x));
      row.pass = r.verdict.pass;
      break;
    }
  }
  c.push_back(row.pass ? "1" : "0");
  return row;
}

/// Evaluates a suite; a geometry error on an item is recorded as a failing row.
inline std::vector<ReportRow> run_verify_suite(Theorem th, const std::vector<SuiteItem>& items) {
  const std::size_t width = verify_header(th).size();
  return parallel_map<ReportRow>(items.size(), [&](std::size_t i) {
    try {
      return evaluate_item(th, i, items[i]);
    } catch (const GeometryError& e) {
      ReportRow row;
      row.cells = {std::to_string(i), items[i].family, std::to_string(items[i].seed)};
      row.cells.resize(width - 1);
      row.cells.push_back("0");
      row.cells[3] = std::string("error: ") + e.what();
      return row;
    }
  });
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline std::string render_csv(const std::vector<std::string>& header, const std::vector<ReportRow>& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_field(cells[i]);
    return s + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r.cells);
  return out;
}

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Example1Row {
  int n = 0;
  double eps = 0.0;
  bool in_domain = false;
  double product = 0.0, closed_form = 0.0, rel_dev = 0.0;
  std::optional<double> eggleston, eggleston_closed_form;
};

/// Bumped n-gon products against the closed form. Grid points outside the
/// bumped_ngon domain are evaluated on the hull of the same 2n points.
inline Example1Row example1_point(int n, double eps) {
  Example1Row r;
  r.n = n;
  r.eps = eps;
  r.in_domain = eps <= bumped_ngon_max_eps(n);
  const ConvexPolygon k = r.in_domain ? bumped_ngon(n, eps) : make_polygon(bumped_ngon_points(n, eps));
  r.product = volume_product(CenteredBody(k)).product;
  r.closed_form = bumped_ngon_product(n, eps);
  r.rel_dev = std::abs(r.product / r.closed_form - 1.0);
  if (n == 3) {
    r.eggleston = eggleston_product(k);
    r.eggleston_closed_form = bumped_triangle_eggleston(eps);
  }
  return r;
}

/// Derivative at 0 of the closed-form excess (product / n^2 sin^2(pi/n) - 1)
/// in the bump size.
inline constexpr double example1_excess_derivative = 1.0;

/// Least-squares slope of the measured excess against the bump size over
/// small bumps.
inline double example1_slope(int n, double lo = 1e-5, double hi = 1e-3, int points = 9) {
  const double m = n * n * std::pow(std::sin(std::numbers::pi / n), 2);
  std::vector<double> x, y;
  for (int i = 0; i < points; ++i) {
    const double e = lo + (hi - lo) * i / (points - 1);
    x.push_back(e);
    y.push_back(volume_product(CenteredBody(bumped_ngon(n, e))).product / m - 1.0);
  }
  return fitted_slope(x, y);
}

struct Example2Sweep {
  std::vector<double> eps;
  std::vector<Example2Result> results;
  double exponent = 0.0;
};

/// Offsets needed over eps in [lo, hi] (log spaced) and the log-log slope.
inline Example2Sweep example2_sweep(int n, double lo = 1e-6, double hi = 1e-3, int points = 7) {
  Example2Sweep s;
  std::vector<double> lx, ly;
  for (int i = 0; i < points; ++i) {
    const double e = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1));
    s.eps.push_back(e);
    s.results.push_back(example2_centre_lower(n, e));
    lx.push_back(std::log(e));
    ly.push_back(std::log(s.results.back().offset_needed));
  }
  s.exponent = fitted_slope(lx, ly);
  return s;
}

}  // namespace volprod
