#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "nls/common.hpp"

namespace nls {

// Bisection on a sign change. f(a) and f(b) must have opposite signs.
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double xtol = 1e-12) {
  double fa = f(a), fb = f(b);
  if (!(fa * fb < 0.0)) throw DomainError("bisect: no sign change on bracket");
  for (int it = 0; it < 200 && (b - a) > xtol * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0.0) return m;
    if (fa * fm < 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  (void)fb;
  return 0.5 * (a + b);
}

// All roots of f on [lo, hi] located by a uniform scan plus bisection.
// Non-finite samples are skipped, so f may return NaN outside its domain.
inline std::vector<double> find_roots(const std::function<double(double)>& f, double lo,
                                      double hi, std::size_t scan = 4000) {
  std::vector<double> roots;
  double prev_x = lo, prev_f = f(lo);
  for (std::size_t i = 1; i <= scan; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan);
    double fx = f(x);
    if (std::isfinite(prev_f) && std::isfinite(fx) && prev_f * fx < 0.0)
      roots.push_back(bisect(f, prev_x, x));
    if (std::isfinite(fx)) {
      prev_x = x;
      prev_f = fx;
    }
  }
  return roots;
}

}  // namespace nls
