#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nls/ground_state.hpp"
#include "nls/quantities.hpp"

using namespace nls;

TEST_CASE("ground state norms") {
  const GroundState& gs = shared_ground_state();

  // published values (the mass is quoted only to ~0.05 there)
  CHECK(gs.mass_sq == doctest::Approx(18.94).epsilon(0.003));
  CHECK(gs.var == doctest::Approx(20.32).epsilon(0.003));
  CHECK(gs.hhalf_sq == doctest::Approx(27.72665).epsilon(1e-4));

  // frozen solver values; regressions in the shooting or quadrature show here
  CHECK(gs.q0 == doctest::Approx(4.3373876800).epsilon(1e-8));
  CHECK(gs.mass_sq == doctest::Approx(18.8972513).epsilon(1e-7));

  CHECK(std::fabs(gs.grad_sq / gs.mass_sq - 3.0) < 1e-7);
  CHECK(std::fabs(gs.l4_fourth / gs.mass_sq - 4.0) < 1e-7);

  // E[Q] M[Q] = mass^2 / 2
  CHECK(gs.energy * gs.mass_sq ==
        doctest::Approx(0.5 * gs.mass_sq * gs.mass_sq).epsilon(1e-6));

  CHECK(gs.samples.front() == gs.q0);
  for (std::size_t k = 1; k < gs.samples.size(); ++k) {
    CHECK(gs.samples[k] > 0.0);
    CHECK(gs.samples[k] < gs.samples[k - 1]);
  }
  CHECK(gs.samples.back() < 1e-10);
}

TEST_CASE("pohozhaev residual follows the tolerance ladder") {
  double prev = 1.0;
  for (double tol : {1e-3, 1e-5, 1e-7}) {
    double dr = 0.3 * std::pow(tol, 0.25);
    std::size_t n = static_cast<std::size_t>(std::ceil(25.0 / dr));
    if (n % 2) ++n;
    GroundState gs = solve_ground_state(make_grid(25.0, n), tol);
    double res = std::max(std::fabs(gs.grad_sq / gs.mass_sq - 3.0),
                          std::fabs(gs.l4_fourth / gs.mass_sq - 4.0));
    CHECK(res < 10.0 * tol);
    CHECK(res < prev);
    prev = res;
  }
}

TEST_CASE("hhalf recomputed from the transform matches the stored value") {
  const GroundState& gs = shared_ground_state();
  RadialField f;
  f.grid = gs.grid;
  f.values.assign(gs.samples.begin(), gs.samples.end());
  double recomputed = hhalf_norm_sq(radial_fourier(f));
  CHECK(recomputed == doctest::Approx(gs.hhalf_sq).epsilon(1e-3));
}

TEST_CASE("value_at interpolates samples and extends the tail") {
  const GroundState& gs = shared_ground_state();
  for (std::size_t k : {0u, 17u, 400u, 9000u})
    CHECK(gs.value_at(gs.grid.r(k)) == doctest::Approx(gs.samples[k]).epsilon(1e-10));
  CHECK(gs.value_at(12.3456) ==
        doctest::Approx(gs.tail_coef * std::exp(-12.3456) / 12.3456).epsilon(1e-4));
  double r_out = gs.grid.r_max() + 3.0;
  CHECK(gs.value_at(r_out) == doctest::Approx(gs.tail_coef * std::exp(-r_out) / r_out));
}

TEST_CASE("error reporting") {
  CHECK_THROWS_AS(solve_ground_state(make_grid(25.0, 10000), -1.0), DomainError);
  // tail cannot decay below tol on a short domain
  CHECK_THROWS_AS(solve_ground_state(make_grid(9.0, 4000), 1e-8), DomainError);
  CHECK_THROWS_AS(solve_ground_state(make_grid(5.0, 2000), 1e-8), DomainError);
}
