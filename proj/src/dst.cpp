#include "nls/dst.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "nls/common.hpp"

namespace nls {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SineTransform::SineTransform(std::size_t interior_size) : m_(interior_size) {
  if (m_ < 2) throw DomainError("SineTransform: interior size too small");
  std::lock_guard<std::mutex> lock(planner_mutex());
  buf_ = fftw_alloc_real(m_);
  plan_ = fftw_plan_r2r_1d(static_cast<int>(m_), buf_, buf_, FFTW_RODFT00, FFTW_MEASURE);
}

SineTransform::~SineTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(buf_);
}

void SineTransform::operator()(std::vector<double>& data) const {
  if (data.size() != m_) throw DomainError("SineTransform: size mismatch");
  std::memcpy(buf_, data.data(), m_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::memcpy(data.data(), buf_, m_ * sizeof(double));
}

CosineTransform::CosineTransform(std::size_t points) : n_(points) {
  if (n_ < 3) throw DomainError("CosineTransform: too few points");
  std::lock_guard<std::mutex> lock(planner_mutex());
  buf_ = fftw_alloc_real(n_);
  plan_ = fftw_plan_r2r_1d(static_cast<int>(n_), buf_, buf_, FFTW_REDFT00, FFTW_MEASURE);
}

CosineTransform::~CosineTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(buf_);
}

void CosineTransform::operator()(std::vector<double>& data) const {
  if (data.size() != n_) throw DomainError("CosineTransform: size mismatch");
  std::memcpy(buf_, data.data(), n_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::memcpy(data.data(), buf_, n_ * sizeof(double));
}

const SineTransform& pooled_sine(std::size_t interior_size) {
  thread_local std::map<std::size_t, std::unique_ptr<SineTransform>> pool;
  auto& slot = pool[interior_size];
  if (!slot) slot = std::make_unique<SineTransform>(interior_size);
  return *slot;
}

const CosineTransform& pooled_cosine(std::size_t points) {
  thread_local std::map<std::size_t, std::unique_ptr<CosineTransform>> pool;
  auto& slot = pool[points];
  if (!slot) slot = std::make_unique<CosineTransform>(points);
  return *slot;
}

}  // namespace nls
