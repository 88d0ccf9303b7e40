#pragma once

#include <string>
#include <vector>

#include "nls/ground_state.hpp"
#include "nls/radial_field.hpp"

namespace nls {

struct SpongeParams {
  double width_frac = 0.2;  // outer fraction of the domain
  double strength = 0.0;    // absorption rate at the wall; 0 disables
};

struct EvolveParams {
  double t_max = 40.0;
  double dt0 = 1e-3;
  double dt_floor = 1e-9;
  double amp_blowup_factor = 50.0;   // trigger on max|u| / max|u0|
  double grad_blowup_factor = 10.0;  // trigger on ||grad u|| / ||grad u0||
  double scatter_l4_fraction = 0.01; // L4 decay trigger, fraction of initial
  SpongeParams sponge;
  double conservation_tol = 1e-3;  // drift guard; see evolve() for semantics
  double sample_dt = 0.05;
  bool adaptive = true;    // dt ~ phase_cfl / max|u|^2, quantized in octaves
  bool nonlinear = true;   // false runs the free flow (test mode)
  double phase_cfl = 0.25; // max nonlinear phase rotation per step
  std::size_t scatter_window = 20;  // consecutive samples under the L4 trigger
  int order = 4;           // 4 = triple-jump composition, 2 = plain Strang

  void validate() const;
};

enum class Outcome { BlowUp, Scattered, Undetermined, Unreliable };
std::string to_string(Outcome outcome);

struct SeriesPoint {
  double t = 0.0;
  double mass = 0.0, energy = 0.0, grad_sq = 0.0, l4_fourth = 0.0;
  double variance = 0.0, variance_rate = 0.0;
  double amp_max = 0.0, eta = 0.0;
};

struct SimulationOutcome {
  Outcome classification = Outcome::Undetermined;
  double t_end = 0.0;
  double t_blowup_estimate = 0.0;  // extrapolated singular time, estimate only
  std::vector<SeriesPoint> series;
  double mass_drift = 0.0;    // relative, sponge-absorbed mass accounted for
  double energy_drift = 0.0;  // relative; meaningful on sponge-free runs
  double absorbed_mass = 0.0;
  std::size_t steps = 0;
  std::string note;
  RadialField final_field;
};

// Strang splitting on v = r u: half nonlinear phase rotation, exact linear
// flow in the sine basis, half nonlinear. Mass is conserved to roundoff by
// construction; classification triggers are described in EvolveParams.
SimulationOutcome evolve(const RadialField& u0, const GroundState& ground,
                         const EvolveParams& params);

struct VirialResiduals {
  std::vector<double> t;             // interior sample times
  std::vector<double> against_grad;  // d2V/dt2 - (24 E0 - 4 grad_sq)
  std::vector<double> against_l4;    // d2V/dt2 - (16 E0 - 2 l4_fourth)
  double max_abs_grad = 0.0, max_abs_l4 = 0.0;
};
VirialResiduals virial_check(const SimulationOutcome& outcome);

}  // namespace nls
