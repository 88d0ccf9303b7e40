#pragma once

#include <cstddef>
#include <vector>

#include "nls/common.hpp"

namespace nls {

// Composite Simpson weights on a uniform grid with n intervals (n+1 samples).
// Odd n is handled by Simpson 3/8 on the last three intervals.
inline std::vector<double> simpson_weights(std::size_t n, double h) {
  if (n < 2) throw DomainError("simpson: need at least 2 intervals");
  std::vector<double> w(n + 1, 0.0);
  std::size_t m = (n % 2 == 0) ? n : n - 3;
  if (n % 2 != 0 && n < 4) throw DomainError("simpson: need an even interval count or n >= 4");
  for (std::size_t k = 0; k + 2 <= m; k += 2) {
    w[k] += h / 3.0;
    w[k + 1] += 4.0 * h / 3.0;
    w[k + 2] += h / 3.0;
  }
  if (n % 2 != 0) {
    w[m] += 3.0 * h / 8.0;
    w[m + 1] += 9.0 * h / 8.0;
    w[m + 2] += 9.0 * h / 8.0;
    w[m + 3] += 3.0 * h / 8.0;
  }
  return w;
}

inline double simpson(const std::vector<double>& f, double h) {
  auto w = simpson_weights(f.size() - 1, h);
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += w[k] * f[k];
  return s;
}

}  // namespace nls
