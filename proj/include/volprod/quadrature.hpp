#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace volprod {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; nodes by Newton iteration on P_n.
inline GaussRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = dn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double dk = static_cast<double>(k);
      const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : dn * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Integral of fn over [a, b] with the given rule on `panels` equal panels.
template <class Fn>
double integrate(const GaussRule& rule, double a, double b, std::size_t panels, Fn&& fn) {
  double total = 0.0;
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * fn(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

namespace detail {

template <class Fn>
double panel_sum(const GaussRule& rule, double a, double b, Fn& fn) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * s;
}

template <class Fn>
double adaptive_panel(const GaussRule& rule, double a, double b, double whole, double rel_tol, double scale, int depth,
                      Fn& fn) {
  const double mid = 0.5 * (a + b);
  const double left = panel_sum(rule, a, mid, fn), right = panel_sum(rule, mid, b, fn);
  const double both = left + right;
  if (depth == 0 || std::abs(both - whole) <= rel_tol * std::max(std::abs(both), scale)) return both;
  return adaptive_panel(rule, a, mid, left, rel_tol, scale, depth - 1, fn) +
         adaptive_panel(rule, mid, b, right, rel_tol, scale, depth - 1, fn);
}

}  // namespace detail

/// Like integrate, but each panel is bisected until halving changes its
/// value by at most rel_tol * max(|value|, scale); scale keeps the test
/// meaningful for integrals that cancel to zero.
template <class Fn>
double integrate_adaptive(const GaussRule& rule, double a, double b, std::size_t panels, double rel_tol, Fn&& fn,
                          double scale = 0.0) {
  double total = 0.0;
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p), hi = lo + h;
    total += detail::adaptive_panel(rule, lo, hi, detail::panel_sum(rule, lo, hi, fn), rel_tol, scale, 30, fn);
  }
  return total;
}

}  // namespace volprod
