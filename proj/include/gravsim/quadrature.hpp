#pragma once

// Fixed-rule quadrature shared by the action oracle and the noise integrals.

#include <cstddef>
#include <span>
#include <vector>

#include "gravsim/errors.hpp"

namespace gravsim {

/// Composite Simpson rule with n intervals (n rounded up to even).
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(a + static_cast<double>(i) * h);
    if (i % 2 == 1) {
      odd += v;
    } else {
      even += v;
    }
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n. Cached per n.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Integral of f over [a, b] with a single n-point Gauss-Legendre panel.
template <typename F>
double gauss_legendre_panel(F&& f, double a, double b, std::size_t n) {
  const GaussLegendreRule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * s;
}

/// Sum of n_panels equal Gauss-Legendre panels over [a, b].
template <typename F>
double gauss_legendre_composite(F&& f, double a, double b, std::size_t n_panels,
                                std::size_t order) {
  if (n_panels == 0) n_panels = 1;
  const double w = (b - a) / static_cast<double>(n_panels);
  double s = 0.0;
  for (std::size_t p = 0; p < n_panels; ++p) {
    const double lo = a + static_cast<double>(p) * w;
    const double hi = p + 1 == n_panels ? b : lo + w;
    s += gauss_legendre_panel(f, lo, hi, order);
  }
  return s;
}

}  // namespace gravsim
