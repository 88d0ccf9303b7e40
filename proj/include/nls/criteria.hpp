#pragma once

#include <map>
#include <string>
#include <vector>

#include "nls/quantities.hpp"
#include "nls/radial_field.hpp"

namespace nls {
namespace criteria {

// Sharp constants of the two inequalities and derived coefficients.
struct Constants {
  static double C14();    // 2^2 7^5 pi^2 / (3^5 5^2)
  static double C();      // C14^{1/14}, sharp interpolation constant
  static double Cinf14(); // 2^11 pi^2 / 3^2
  static double Cinf();   // Cinf14^{1/14}
  static double c();      // 1 / (4 C^{14/3})
  // Boundary in M E above which the real-data Lushnikov condition implies
  // the adapted one: 7^5 pi^2 / 450.
  static double me_regime_boundary();
};

// Threshold function from the mechanical analysis; positive branch for
// omega <= 1, negative for omega >= 1.
double g(double omega);

enum class CriterionId { Dhr, NegativeEnergy, Lushnikov, Adapted, RadialLocalized, MassConcentration };
enum class Verdict { BlowUp, Scatter, NoConclusion };

std::string to_string(CriterionId id);
std::string to_string(Verdict verdict);

struct CriterionVerdict {
  CriterionId id;
  Verdict verdict = Verdict::NoConclusion;
  // Every scalar needed to re-derive the verdict by hand.
  std::map<std::string, double> witnesses;
};

// Dichotomy below the mass-energy threshold plus the Glassey clause E < 0.
CriterionVerdict classify_dhr(const Diagnostics& d);

// Standalone Glassey row: negative energy with finite variance blows up.
CriterionVerdict negative_energy(const Diagnostics& d);

// V_t/M < 2 sqrt(3) g(8 E V / (3 M^2)); requires E > 0.
CriterionVerdict lushnikov(const Diagnostics& d);

// V_t/M < 2 sqrt(2) (ME)^{1/6} C^{-7/3} g(4 C^{14/3} E^{2/3} V / M^{7/3}).
CriterionVerdict adapted(const Diagnostics& d);

// Infinite-variance radial criterion on the localized variance. delta must
// lie in (0, 0.1]; kappa_psi = 64 fixes the implicit constant of the
// R^2 >~ M^2/delta precondition for the concrete psi used here.
inline constexpr double kKappaPsi = 64.0;
inline constexpr double kDeltaMax = 0.1;
CriterionVerdict radial_localized(const LocalizedVariance& lv, double mass, double energy,
                                  double R, double delta);

// Real radial data with most mass inside the ball of radius
// delta^{1/2} M (ME)^{-1/3} blows up.
CriterionVerdict mass_concentration(const RadialField& field, const GroundState& ground,
                                    double delta);

// Simplified quadratic-phase reformulations; exact rewrites of the direct
// conditions when V_t^2 = 32 V E^gamma. The adapted margin uses the real
// cube root so root-finding can continue across E = 0.
double lushnikov_simple_margin(double mass, double energy, double variance, double e_real);
double adapted_simple_margin(double mass, double energy, double variance, double e_real);
bool lushnikov_fires_simple(const Diagnostics& d);
bool adapted_fires_simple(const Diagnostics& d);

struct InequalityReport {
  double uncertainty_residual = 0.0;    // rhs - lhs of the uncertainty principle
  double interpolation_residual = 0.0;  // C V^{3/14} l4^{1/7} - M^{1/2}
  double lagrangian = 0.0;              // V^{3/14} l4^{1/7} / M^{1/2}
  double lagrangian_bound = 0.0;        // 1/C, attained by the extremizer
  double extremality_gap = 0.0;         // lagrangian - 1/C >= 0
};
InequalityReport verify_inequalities(const RadialField& field, const GroundState& ground);

// One row per criterion for a profile/field. delta feeds the localized and
// mass-concentration rows; R = 0 selects the smallest admissible radius.
std::vector<CriterionVerdict> evaluate_all(const Diagnostics& d, const RadialField* field,
                                           const GroundState& ground, double delta = 0.01,
                                           double R = 0.0);

}  // namespace criteria
}  // namespace nls
