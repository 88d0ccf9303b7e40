#pragma once

#include <complex>
#include <vector>

#include "nls/grid.hpp"
#include "nls/ground_state.hpp"
#include "nls/radial_field.hpp"

namespace nls {

// Scale-invariant and conserved diagnostics of one radial field. All radial
// integrals carry the 4*pi*r^2 measure.
struct Diagnostics {
  double mass = 0.0;       // ||u||_{L^2}^2
  double energy = 0.0;     // (1/2)||grad u||^2 - (1/4)||u||_{L^4}^4
  double momentum = 0.0;   // identically zero for radial data
  double grad_sq = 0.0;
  double l4_fourth = 0.0;
  double variance = 0.0;       // ||x u||^2
  double variance_rate = 0.0;  // 4 Im int (x . grad u) conj(u)
  double eta = 0.0;            // ||u|| ||grad u|| / (||Q|| ||grad Q||)
  double me_ratio = 0.0;       // M E / (M[Q] E[Q])
  double hhalf_sq = 0.0;
  bool hhalf_valid = false;

  // E = e_real + e_phase for quadratic-phase data f(r) e^{i gamma r^2};
  // only closed-form profile diagnostics carry the split.
  double e_real = 0.0;
  double e_phase = 0.0;
  bool phase_split = false;

  bool trusted = true;  // tail decay floor held
};

Diagnostics compute_diagnostics(const RadialField& field, const GroundState& ground,
                                bool with_hhalf = true, double tail_floor = 1e-6);

// 3d radial Fourier transform \hat u(R) = 2 R^{-1} int u(r) sin(2 pi R r) r dr,
// evaluated on R_k = k/(2 L) through one sine transform of u(r) r.
struct Spectrum {
  FrequencyGrid grid;
  std::vector<std::complex<double>> values;
  bool truncated = false;  // spectrum not decayed within the available bandwidth
};

Spectrum radial_fourier(const RadialField& field, std::size_t pad = 4);

// ||u||^2_{Hdot^{1/2}} = 8 pi^2 int R^3 |\hat u|^2 dR with a Gaussian tail fit
// past the last retained frequency.
double hhalf_norm_sq(const Spectrum& spectrum);

// Plancherel route to the mass, int |\hat u|^2 over frequency space.
double mass_from_spectrum(const Spectrum& spectrum);

// Fixed localization weight: psi = s^2 for s <= 1, psi = 2 for s >= 2, quintic
// blend in between (C^2, nondecreasing).
double psi_weight(double s);
double psi_weight_prime(double s);

struct LocalizedVariance {
  double value = 0.0;  // int R^2 psi(x/R) |u|^2
  double rate = 0.0;   // 2 Im int R psi'(r/R) (d_r u) conj(u)
};
LocalizedVariance localized_variance(const RadialField& field, double R);

// d_r u at the nodes from the sine interpolant of v = r u; spectrally
// accurate for fields with decayed tails.
std::vector<std::complex<double>> radial_derivative(const RadialField& field);

}  // namespace nls
