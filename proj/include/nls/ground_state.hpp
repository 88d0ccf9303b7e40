#pragma once

#include <vector>

#include "nls/grid.hpp"

namespace nls {

// The positive decaying radial solution of Q'' + (2/r)Q' - Q + Q^3 = 0.
// Samples beyond the point where Q drops under the shooting noise floor are
// replaced by the asymptotic form c e^{-r}/r; the fitted c is kept for tail
// quadrature and for evaluating Q past the grid.
struct GroundState {
  RadialGrid grid;
  std::vector<double> samples;     // Q(r_k)
  std::vector<double> derivative;  // Q'(r_k)
  double q0 = 0.0;                 // converged shooting value Q(0)
  double tail_coef = 0.0;          // c in Q ~ c e^{-r}/r

  double mass_sq = 0.0;   // ||Q||_{L^2}^2
  double grad_sq = 0.0;   // ||grad Q||_{L^2}^2
  double l4_fourth = 0.0; // ||Q||_{L^4}^4
  double var = 0.0;       // ||yQ||_{L^2}^2
  double hhalf_sq = 0.0;  // ||Q||_{Hdot^{1/2}}^2
  double energy = 0.0;    // E[Q]

  double mass_energy() const { return mass_sq * energy; }
  double value_at(double r) const;
};

// Shooting solve with bisection on Q(0). Pohozhaev ratios 3 and 4 hold to
// 10*tol on return; failure to converge or an undecayed tail throws.
GroundState solve_ground_state(const RadialGrid& grid, double tol);

inline RadialGrid default_ground_grid() { return make_grid(25.0, 10000); }

// Solved once at default resolution and shared; immutable thereafter.
const GroundState& shared_ground_state();

}  // namespace nls
