#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "nls/grid.hpp"

namespace nls {

// Complex samples u(r_k) of a radial function on a uniform grid. u must be
// finite at the origin; norms are only trusted when the tail has decayed.
struct RadialField {
  RadialGrid grid;
  std::vector<std::complex<double>> values;

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }

  bool tail_ok(double rel_floor = 1e-6) const {
    if (values.empty()) return false;
    return std::abs(values.back()) <= rel_floor * std::max(max_abs(), 1e-300);
  }

  bool is_real(double rel_tol = 1e-12) const {
    double m = max_abs();
    for (const auto& v : values)
      if (std::abs(v.imag()) > rel_tol * std::max(m, 1e-300)) return false;
    return true;
  }
};

}  // namespace nls
