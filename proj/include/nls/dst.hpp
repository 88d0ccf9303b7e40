#pragma once

#include <cstddef>
#include <vector>

namespace nls {

// Discrete sine transform DST-I over the interior points of a Dirichlet grid:
//   Y_k = 2 * sum_{j=1..m} X_j sin(pi j k / (m+1)),  k = 1..m.
// The transform is its own inverse up to the factor 2*(m+1). Plan creation is
// serialized internally (FFTW planner is not thread safe); execution is safe
// to run concurrently on distinct instances.
class SineTransform {
 public:
  explicit SineTransform(std::size_t interior_size);
  ~SineTransform();
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  std::size_t size() const { return m_; }
  double inverse_factor() const { return 1.0 / (2.0 * static_cast<double>(m_ + 1)); }

  // In-place unnormalized transform of data[0..m-1].
  void operator()(std::vector<double>& data) const;

 private:
  std::size_t m_;
  double* buf_;
  void* plan_;  // fftw_plan
};

// DCT-I over n points X_0..X_{n-1}:
//   Y_j = X_0 + (-1)^j X_{n-1} + 2 sum_{k=1..n-2} X_k cos(pi j k / (n-1)).
class CosineTransform {
 public:
  explicit CosineTransform(std::size_t points);
  ~CosineTransform();
  CosineTransform(const CosineTransform&) = delete;
  CosineTransform& operator=(const CosineTransform&) = delete;

  void operator()(std::vector<double>& data) const;

 private:
  std::size_t n_;
  double* buf_;
  void* plan_;  // fftw_plan
};

// Thread-local plan pools keyed by size; safe for concurrent callers.
const SineTransform& pooled_sine(std::size_t interior_size);
const CosineTransform& pooled_cosine(std::size_t points);

}  // namespace nls
