#pragma once

#include <cstddef>

#include "nls/common.hpp"

namespace nls {

// Uniform radial grid r_k = k*dr, k = 0..n.
struct RadialGrid {
  double dr = 0.0;
  std::size_t n = 0;

  double r(std::size_t k) const { return dr * static_cast<double>(k); }
  double r_max() const { return dr * static_cast<double>(n); }
  std::size_t points() const { return n + 1; }
};

inline RadialGrid make_grid(double r_max, std::size_t n) {
  if (r_max <= 0.0 || n < 8) throw DomainError("radial grid: need r_max > 0 and n >= 8");
  return RadialGrid{r_max / static_cast<double>(n), n};
}

// Uniform frequency grid R_k = k*dR, k = 0..n.
struct FrequencyGrid {
  double dR = 0.0;
  std::size_t n = 0;

  double R(std::size_t k) const { return dR * static_cast<double>(k); }
};

}  // namespace nls
