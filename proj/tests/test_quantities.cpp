#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "nls/criteria.hpp"
#include "nls/ground_state.hpp"
#include "nls/profiles.hpp"
#include "nls/quantities.hpp"
#include "oracle.hpp"

using namespace nls;

namespace {

RadialField gaussian_field(double p, double alpha, double gamma, const RadialGrid& grid) {
  RadialField f;
  f.grid = grid;
  f.values.resize(grid.points());
  for (std::size_t k = 0; k <= grid.n; ++k) {
    double r = grid.r(k);
    f.values[k] = p * std::exp(-alpha * r * r / 2.0) * std::polar(1.0, gamma * r * r);
  }
  return f;
}

const RadialGrid kGrid = make_grid(25.0, 4096);

}  // namespace

TEST_CASE("diagnostics of the unit Gaussian") {
  const GroundState& gs = shared_ground_state();
  Diagnostics d = compute_diagnostics(gaussian_field(1, 1, 0, kGrid), gs);

  double mass_oracle = oracle::radial([](double r) { return std::exp(-r * r); }, 25.0);
  CHECK(mass_oracle == doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-10));
  CHECK(d.mass == doctest::Approx(mass_oracle).epsilon(1e-9));
  CHECK(d.mass == doctest::Approx(5.568).epsilon(1e-3));
  CHECK(d.energy == doctest::Approx(0.5 * d.grad_sq - 0.25 * d.l4_fourth));
  CHECK(d.momentum == 0.0);
  CHECK(d.trusted);
  CHECK(d.hhalf_valid);
  CHECK(d.hhalf_sq == doctest::Approx(2.0 * kPi).epsilon(1e-6));
}

TEST_CASE("zero field maps to zero diagnostics") {
  const GroundState& gs = shared_ground_state();
  RadialField f;
  f.grid = kGrid;
  f.values.assign(kGrid.points(), 0.0);
  Diagnostics d = compute_diagnostics(f, gs);
  CHECK(d.mass == 0.0);
  CHECK(d.energy == 0.0);
  CHECK(d.variance == 0.0);
  CHECK(d.variance_rate == 0.0);
  CHECK(d.eta == 0.0);
  CHECK(d.hhalf_sq == 0.0);
  Spectrum sp = radial_fourier(f);
  for (const auto& v : sp.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("Q samples give eta = 1 and me_ratio = 1") {
  const GroundState& gs = shared_ground_state();
  RadialField f;
  f.grid = gs.grid;
  f.values.assign(gs.samples.begin(), gs.samples.end());
  Diagnostics d = compute_diagnostics(f, gs, false);
  CHECK(d.eta == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(d.me_ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("variance rate of the quadratic phase equals 32 pi gamma F") {
  const GroundState& gs = shared_ground_state();
  Diagnostics d = compute_diagnostics(gaussian_field(1, 1, 0.5, kGrid), gs, false);
  double f_oracle = oracle::integrate(
      [](double r) { return r * r * r * r * std::exp(-r * r); }, 0.0, 25.0);
  CHECK(f_oracle == doctest::Approx(3.0 / 8.0 * std::sqrt(kPi)).epsilon(1e-10));
  CHECK(d.variance_rate == doctest::Approx(32.0 * kPi * 0.5 * f_oracle).epsilon(1e-8));
}

TEST_CASE("radial Fourier transform of a Gaussian matches the closed form") {
  RadialField f = gaussian_field(1, 1, 0, kGrid);
  Spectrum sp = radial_fourier(f);
  CHECK(!sp.truncated);
  for (std::size_t k = 0; k < sp.values.size(); k += 37) {
    double R = sp.grid.R(k);
    double expected = std::pow(2.0 * kPi, 1.5) * std::exp(-2.0 * kPi * kPi * R * R);
    if (expected > 1e-12)
      CHECK(sp.values[k].real() == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::fabs(sp.values[k].imag()) < 1e-12);
  }
}

TEST_CASE("Plancherel identity on the ground state") {
  const GroundState& gs = shared_ground_state();
  RadialField f;
  f.grid = gs.grid;
  f.values.assign(gs.samples.begin(), gs.samples.end());
  Spectrum sp = radial_fourier(f);
  CHECK(mass_from_spectrum(sp) == doctest::Approx(gs.mass_sq).epsilon(1e-4));
}

TEST_CASE("hhalf examples") {
  const GroundState& gs = shared_ground_state();
  Diagnostics d = compute_diagnostics(gaussian_field(1, 2, 0.5, kGrid), gs);
  CHECK(d.hhalf_sq == doctest::Approx(kPi * std::sqrt(1.25)).epsilon(1e-6));
  CHECK(d.hhalf_sq == doctest::Approx(3.512).epsilon(1e-3));
}

TEST_CASE("localized variance") {
  const GroundState& gs = shared_ground_state();

  // compactly supported inside radius R: V_R = V exactly
  RadialField f;
  f.grid = kGrid;
  f.values.assign(kGrid.points(), 0.0);
  for (std::size_t k = 0; k <= kGrid.n; ++k) {
    double r = kGrid.r(k);
    if (r < 2.0) f.values[k] = (1.0 - r / 2.0) * (1.0 - r / 2.0);
  }
  Diagnostics d = compute_diagnostics(f, gs, false);
  auto lv = localized_variance(f, 2.5);
  CHECK(lv.value == doctest::Approx(d.variance).epsilon(1e-12));
  CHECK(lv.rate == 0.0);

  // constant-modulus shell beyond 2R contributes 2 R^2 times its mass
  RadialField shell;
  shell.grid = kGrid;
  shell.values.assign(kGrid.points(), 0.0);
  double R = 2.0;
  for (std::size_t k = 0; k <= kGrid.n; ++k) {
    double r = kGrid.r(k);
    if (r >= 5.0 && r <= 9.0) shell.values[k] = 0.3;
  }
  Diagnostics ds = compute_diagnostics(shell, gs, false);
  auto lvs = localized_variance(shell, R);
  CHECK(lvs.value == doctest::Approx(2.0 * R * R * ds.mass).epsilon(1e-10));

  // wide weight over a narrow Gaussian: V_R -> V
  RadialField g = gaussian_field(1, 1, 0, kGrid);
  Diagnostics dg = compute_diagnostics(g, gs, false);
  auto lvg = localized_variance(g, 10.0);
  CHECK(lvg.value / dg.variance == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(localized_variance(g, -1.0), DomainError);
}

TEST_CASE("psi weight is the specified C^2 nondecreasing blend") {
  CHECK(psi_weight(0.5) == 0.25);
  CHECK(psi_weight(1.0) == 1.0);
  CHECK(psi_weight(2.0) == 2.0);
  CHECK(psi_weight(3.0) == 2.0);
  // C^2 seams and monotonicity
  for (double s : {1.0, 2.0}) {
    double h = 1e-6;
    CHECK(psi_weight(s + h) - psi_weight(s - h) ==
          doctest::Approx(2.0 * h * psi_weight_prime(s)).epsilon(1e-3));
  }
  double prev = 0.0;
  for (double s = 0.0; s <= 2.5; s += 1e-3) {
    CHECK(psi_weight(s) >= prev - 1e-15);
    CHECK(psi_weight_prime(s) >= -1e-12);
    prev = psi_weight(s);
  }
}

TEST_CASE("localized variance fraction vanishes as R grows") {
  const GroundState& gs = shared_ground_state();
  RadialField g = gaussian_field(1.3, 0.7, 0.2, kGrid);
  Diagnostics d = compute_diagnostics(g, gs, false);
  double prev = 1e300;
  for (double R : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    double frac = localized_variance(g, R).value / (R * R * d.mass);
    CHECK(frac < prev);
    prev = frac;
  }
  CHECK(prev < 3e-3);
}

TEST_CASE("uncertainty and interpolation inequalities hold on random fields") {
  const GroundState& gs = shared_ground_state();
  std::mt19937 rng(20250811);
  criteria::Constants c;
  (void)c;
  double C = criteria::Constants::C();
  for (int trial = 0; trial < 200; ++trial) {
    RadialField f = oracle::random_mixture(rng, kGrid);
    Diagnostics d = compute_diagnostics(f, gs, false);
    if (d.mass < 1e-12) continue;
    double im_term = d.variance_rate / 4.0;
    double lhs_u = d.mass * d.mass + (4.0 / 9.0) * im_term * im_term;
    double rhs_u = (4.0 / 9.0) * d.variance * d.grad_sq;
    CHECK(rhs_u - lhs_u >= -1e-10 * rhs_u);
    double rhs_i = C * std::pow(d.variance, 3.0 / 14.0) * std::pow(d.l4_fourth, 1.0 / 7.0);
    CHECK(rhs_i - std::sqrt(d.mass) >= -1e-10 * rhs_i);
  }
}

TEST_CASE("scaling covariance at lambda = 2") {
  const GroundState& gs = shared_ground_state();
  double lambda = 2.0;
  // u(r) -> lambda^{3/2} u(lambda r) keeps the mass and scales the rest
  RadialField base = gaussian_field(1.1, 1.0, 0.3, kGrid);
  RadialField scaled;
  scaled.grid = kGrid;
  scaled.values.resize(kGrid.points());
  for (std::size_t k = 0; k <= kGrid.n; ++k) {
    double r = kGrid.r(k);
    scaled.values[k] = std::pow(lambda, 1.5) * 1.1 *
                       std::exp(-lambda * lambda * r * r / 2.0) *
                       std::polar(1.0, 0.3 * lambda * lambda * r * r);
  }
  Diagnostics d0 = compute_diagnostics(base, gs, false);
  Diagnostics d1 = compute_diagnostics(scaled, gs, false);
  CHECK(d1.mass == doctest::Approx(d0.mass).epsilon(1e-8));
  CHECK(d1.grad_sq == doctest::Approx(lambda * lambda * d0.grad_sq).epsilon(1e-7));
  CHECK(d1.variance == doctest::Approx(d0.variance / (lambda * lambda)).epsilon(1e-8));
}
