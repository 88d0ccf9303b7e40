#include "nls/quantities.hpp"

#include <algorithm>
#include <cmath>

#include "nls/dst.hpp"
#include "nls/quadrature.hpp"

namespace nls {

namespace {

// Sine coefficients of v = r u on the interior nodes; Y_k as produced by the
// unnormalized DST-I (factor 2 included).
struct SineData {
  std::vector<double> re, im;
  bool complex_input = false;
};

SineData sine_of_ru(const RadialField& field) {
  std::size_t m = field.grid.n - 1;
  SineData s;
  s.re.assign(m, 0.0);
  s.im.assign(m, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    double r = field.grid.r(j);
    s.re[j - 1] = field.values[j].real() * r;
    if (field.values[j].imag() != 0.0) s.complex_input = true;
    s.im[j - 1] = field.values[j].imag() * r;
  }
  const SineTransform& dst = pooled_sine(m);
  dst(s.re);
  if (s.complex_input) dst(s.im);
  return s;
}

// ||grad u||^2 = 4 pi int |d_r v|^2 dr via Parseval on the sine interpolant.
double grad_sq_spectral(const RadialGrid& grid, const SineData& s) {
  std::size_t m = grid.n - 1;
  double L = grid.r_max(), sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double mu = kPi * static_cast<double>(k + 1) / L;
    sum += mu * mu * (s.re[k] * s.re[k] + s.im[k] * s.im[k]);
  }
  return 4.0 * kPi * grid.dr / (2.0 * static_cast<double>(grid.n)) * sum;
}

std::vector<std::complex<double>> derivative_from_sine(const RadialField& field,
                                                       const SineData& s) {
  std::size_t n = field.grid.n, m = n - 1;
  double L = field.grid.r_max();
  const CosineTransform& dct = pooled_cosine(n + 1);
  auto cosine_eval = [&](const std::vector<double>& y) {
    std::vector<double> x(n + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k)
      x[k + 1] = y[k] * kPi * static_cast<double>(k + 1) / L;
    dct(x);
    for (auto& v : x) v /= 2.0 * static_cast<double>(n);
    return x;  // v'(r_j), j = 0..n
  };
  auto vpre = cosine_eval(s.re);
  std::vector<double> vpim;
  if (s.complex_input) vpim = cosine_eval(s.im);

  std::vector<std::complex<double>> du(n + 1);
  du[0] = 0.0;  // radial regularity
  for (std::size_t j = 1; j <= n; ++j) {
    std::complex<double> vp(vpre[j], s.complex_input ? vpim[j] : 0.0);
    du[j] = (vp - field.values[j]) / field.grid.r(j);
  }
  return du;
}

}  // namespace

std::vector<std::complex<double>> radial_derivative(const RadialField& field) {
  return derivative_from_sine(field, sine_of_ru(field));
}

Diagnostics compute_diagnostics(const RadialField& field, const GroundState& ground,
                                bool with_hhalf, double tail_floor) {
  if (field.values.size() != field.grid.points())
    throw DomainError("compute_diagnostics: sample count does not match grid");
  Diagnostics d;
  d.trusted = field.tail_ok(tail_floor);

  auto w = simpson_weights(field.grid.n, field.grid.dr);
  SineData s = sine_of_ru(field);
  auto du = derivative_from_sine(field, s);
  double mass = 0.0, l4 = 0.0, var = 0.0, vrate = 0.0;
  for (std::size_t k = 0; k <= field.grid.n; ++k) {
    double r = field.grid.r(k), r2 = r * r;
    double a2 = std::norm(field.values[k]);
    mass += w[k] * a2 * r2;
    l4 += w[k] * a2 * a2 * r2;
    var += w[k] * a2 * r2 * r2;
    vrate += w[k] * std::imag(du[k] * std::conj(field.values[k])) * r2 * r;
  }
  d.mass = 4.0 * kPi * mass;
  d.grad_sq = grad_sq_spectral(field.grid, s);
  d.l4_fourth = 4.0 * kPi * l4;
  d.variance = 4.0 * kPi * var;
  d.variance_rate = 16.0 * kPi * vrate;
  d.energy = 0.5 * d.grad_sq - 0.25 * d.l4_fourth;
  d.eta = std::sqrt(d.mass * d.grad_sq / (ground.mass_sq * ground.grad_sq));
  d.me_ratio = d.mass * d.energy / (ground.mass_sq * ground.energy);

  if (with_hhalf) {
    Spectrum sp = radial_fourier(field);
    if (!sp.truncated) {
      d.hhalf_sq = hhalf_norm_sq(sp);
      d.hhalf_valid = true;
    }
  }
  return d;
}

Spectrum radial_fourier(const RadialField& field, std::size_t pad) {
  if (pad == 0) pad = 1;
  std::size_t np = field.grid.n * pad;
  double L = field.grid.dr * static_cast<double>(np);

  // DST of u(r) r gives the transform on R_k = k/(2L); the trapezoid sum is
  // spectrally accurate here because the integrand vanishes with all odd
  // derivatives at both ends.
  std::vector<double> re(np - 1, 0.0), im(np - 1, 0.0);
  bool complex_input = false;
  for (std::size_t j = 1; j <= field.grid.n && j < np; ++j) {
    double r = field.grid.r(j);
    re[j - 1] = field.values[j].real() * r;
    im[j - 1] = field.values[j].imag() * r;
    if (field.values[j].imag() != 0.0) complex_input = true;
  }
  const SineTransform& dst = pooled_sine(np - 1);
  dst(re);
  if (complex_input) dst(im);

  Spectrum sp;
  sp.grid.dR = 1.0 / (2.0 * L);
  std::vector<double> t(np);  // R^3 |uhat|^2
  std::vector<std::complex<double>> vals(np);
  double u0 = 0.0, v0 = 0.0;
  {
    auto w = simpson_weights(field.grid.n, field.grid.dr);
    for (std::size_t k = 0; k <= field.grid.n; ++k) {
      double r2 = field.grid.r(k) * field.grid.r(k);
      u0 += w[k] * field.values[k].real() * r2;
      v0 += w[k] * field.values[k].imag() * r2;
    }
  }
  vals[0] = 4.0 * kPi * std::complex<double>(u0, v0);
  t[0] = 0.0;
  double peak = 0.0;
  for (std::size_t k = 1; k < np; ++k) {
    double R = sp.grid.R(k);
    std::complex<double> uh(field.grid.dr * re[k - 1] / R,
                            complex_input ? field.grid.dr * im[k - 1] / R : 0.0);
    vals[k] = uh;
    t[k] = R * R * R * std::norm(uh);
    peak = std::max(peak, t[k]);
  }

  // Keep frequencies out to where R^3 |uhat|^2 has decayed away.
  std::size_t cut = np - 1;
  while (cut > 16 && t[cut] <= 1e-18 * peak) --cut;
  cut = std::min(np - 1, cut + 8);
  sp.truncated = t[np - 1] > 1e-10 * peak;
  sp.grid.n = cut;
  vals.resize(cut + 1);
  sp.values = std::move(vals);
  return sp;
}

namespace {

double spectral_moment(const Spectrum& sp, int r_power, double* tail_out) {
  auto w = simpson_weights(sp.grid.n, sp.grid.dR);
  double s = 0.0;
  for (std::size_t k = 0; k <= sp.grid.n; ++k) {
    double R = sp.grid.R(k);
    s += w[k] * std::pow(R, r_power) * std::norm(sp.values[k]);
  }
  if (tail_out) *tail_out = 0.0;
  // Gaussian tail fit |uhat|^2 ~ A e^{-c R^2} on the outer part of the grid;
  // all profiles in scope are Gaussian-dominated in frequency.
  std::size_t kb = sp.grid.n, ka = (8 * sp.grid.n) / 10;
  double pa = std::norm(sp.values[ka]), pb = std::norm(sp.values[kb]);
  if (r_power == 3 && pa > 0.0 && pb > 0.0 && pa > pb && tail_out) {
    double Ra2 = sp.grid.R(ka) * sp.grid.R(ka), Rb2 = sp.grid.R(kb) * sp.grid.R(kb);
    double c = std::log(pa / pb) / (Rb2 - Ra2);
    if (c > 0.0 && std::isfinite(c)) {
      double A = pb * std::exp(c * Rb2);
      *tail_out = A * std::exp(-c * Rb2) * (c * Rb2 + 1.0) / (2.0 * c * c);
    }
  }
  return s;
}

}  // namespace

double hhalf_norm_sq(const Spectrum& spectrum) {
  if (spectrum.truncated)
    throw DomainError("hhalf_norm_sq: spectrum flagged truncated (insufficient bandwidth)");
  double tail = 0.0;
  double s = spectral_moment(spectrum, 3, &tail);
  return 8.0 * kPi * kPi * (s + tail);
}

double mass_from_spectrum(const Spectrum& spectrum) {
  return 4.0 * kPi * spectral_moment(spectrum, 2, nullptr);
}

double psi_weight(double s) {
  if (s <= 1.0) return s * s;
  if (s >= 2.0) return 2.0;
  double t = s - 1.0;
  return 1.0 + t * (2.0 + t * (1.0 + t * (-5.0 + t * (4.0 - t))));
}

double psi_weight_prime(double s) {
  if (s <= 1.0) return 2.0 * s;
  if (s >= 2.0) return 0.0;
  double t = s - 1.0;
  return 2.0 + t * (2.0 + t * (-15.0 + t * (16.0 - 5.0 * t)));
}

LocalizedVariance localized_variance(const RadialField& field, double R) {
  if (R <= 0.0) throw DomainError("localized_variance: R must be positive");
  auto w = simpson_weights(field.grid.n, field.grid.dr);
  auto du = derivative_from_sine(field, sine_of_ru(field));
  LocalizedVariance lv;
  double val = 0.0, rate = 0.0;
  for (std::size_t k = 0; k <= field.grid.n; ++k) {
    double r = field.grid.r(k), r2 = r * r;
    val += w[k] * R * R * psi_weight(r / R) * std::norm(field.values[k]) * r2;
    rate += w[k] * psi_weight_prime(r / R) *
            std::imag(du[k] * std::conj(field.values[k])) * r2;
  }
  lv.value = 4.0 * kPi * val;
  lv.rate = 8.0 * kPi * R * rate;
  return lv;
}

}  // namespace nls
