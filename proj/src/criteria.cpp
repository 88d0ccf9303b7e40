#include "nls/criteria.hpp"

#include <cmath>

#include "nls/quadrature.hpp"

namespace nls {
namespace criteria {

double Constants::C14() { return 4.0 * 16807.0 * kPi * kPi / (243.0 * 25.0); }
double Constants::C() { return std::pow(C14(), 1.0 / 14.0); }
double Constants::Cinf14() { return 2048.0 * kPi * kPi / 9.0; }
double Constants::Cinf() { return std::pow(Cinf14(), 1.0 / 14.0); }
double Constants::c() { return 1.0 / (4.0 * std::pow(C14(), 1.0 / 3.0)); }
double Constants::me_regime_boundary() { return 16807.0 * kPi * kPi / 450.0; }

double g(double omega) {
  if (!(omega > 0.0)) throw DomainError("g: omega must be positive");
  double rad = 2.0 / std::sqrt(omega) + omega - 3.0;
  double root = std::sqrt(std::max(rad, 0.0));
  return omega <= 1.0 ? root : -root;
}

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::Dhr: return "dhr";
    case CriterionId::NegativeEnergy: return "negative_energy";
    case CriterionId::Lushnikov: return "lushnikov";
    case CriterionId::Adapted: return "adapted";
    case CriterionId::RadialLocalized: return "radial_localized";
    case CriterionId::MassConcentration: return "mass_concentration";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::BlowUp: return "BlowUp";
    case Verdict::Scatter: return "Scatter";
    case Verdict::NoConclusion: return "NoConclusion";
  }
  return "?";
}

CriterionVerdict classify_dhr(const Diagnostics& d) {
  CriterionVerdict v{CriterionId::Dhr};
  v.witnesses = {{"me_ratio", d.me_ratio}, {"eta", d.eta}, {"energy", d.energy}};
  if (d.energy < 0.0) {
    v.verdict = Verdict::BlowUp;
    return v;
  }
  if (d.me_ratio < 1.0) {
    if (d.eta < 1.0)
      v.verdict = Verdict::Scatter;
    else if (d.eta > 1.0)
      v.verdict = Verdict::BlowUp;
  }
  return v;
}

CriterionVerdict negative_energy(const Diagnostics& d) {
  CriterionVerdict v{CriterionId::NegativeEnergy};
  v.witnesses = {{"energy", d.energy}, {"variance", d.variance}};
  if (d.energy < 0.0 && std::isfinite(d.variance)) v.verdict = Verdict::BlowUp;
  return v;
}

CriterionVerdict lushnikov(const Diagnostics& d) {
  CriterionVerdict v{CriterionId::Lushnikov};
  if (!(d.energy > 0.0)) {
    v.witnesses = {{"precondition_E_positive", 0.0}, {"energy", d.energy}};
    return v;
  }
  double omega = 8.0 * d.energy * d.variance / (3.0 * d.mass * d.mass);
  double threshold = 2.0 * std::sqrt(3.0) * g(omega);
  double vtm = d.variance_rate / d.mass;
  v.witnesses = {{"omega", omega},     {"g", g(omega)},          {"threshold", threshold},
                 {"vt_over_m", vtm},   {"mass", d.mass},         {"energy", d.energy},
                 {"variance", d.variance}, {"variance_rate", d.variance_rate}};
  if (vtm < threshold) v.verdict = Verdict::BlowUp;
  if (d.phase_split)
    v.witnesses["simple_margin"] =
        lushnikov_simple_margin(d.mass, d.energy, d.variance, d.e_real);
  return v;
}

CriterionVerdict adapted(const Diagnostics& d) {
  CriterionVerdict v{CriterionId::Adapted};
  if (!(d.energy > 0.0)) {
    v.witnesses = {{"precondition_E_positive", 0.0}, {"energy", d.energy}};
    return v;
  }
  double C = Constants::C();
  double kappa = 4.0 * std::pow(Constants::C14(), 1.0 / 3.0) * std::pow(d.energy, 2.0 / 3.0) *
                 d.variance / std::pow(d.mass, 7.0 / 3.0);
  double threshold = 2.0 * std::sqrt(2.0) * std::pow(d.mass * d.energy, 1.0 / 6.0) /
                     std::pow(C, 7.0 / 3.0) * g(kappa);
  double vtm = d.variance_rate / d.mass;
  v.witnesses = {{"kappa", kappa},   {"g", g(kappa)},          {"threshold", threshold},
                 {"vt_over_m", vtm}, {"mass", d.mass},         {"energy", d.energy},
                 {"variance", d.variance}, {"variance_rate", d.variance_rate}};
  if (vtm < threshold) v.verdict = Verdict::BlowUp;
  if (d.phase_split)
    v.witnesses["simple_margin"] = adapted_simple_margin(d.mass, d.energy, d.variance, d.e_real);
  return v;
}

CriterionVerdict radial_localized(const LocalizedVariance& lv, double mass, double energy,
                                  double R, double delta) {
  if (!(delta > 0.0) || delta > kDeltaMax)
    throw DomainError("radial_localized: delta must lie in (0, 0.1]");
  CriterionVerdict v{CriterionId::RadialLocalized};
  double me = mass * energy;
  v.witnesses = {{"me", me},       {"delta", delta}, {"R", R},
                 {"VR", lv.value}, {"VR_rate", lv.rate}, {"kappa_psi", kKappaPsi}};
  if (!(me > 1.0)) {
    v.witnesses["precondition_me_gt_1"] = 0.0;
    return v;
  }
  if (!(lv.value / mass <= 0.5 * R * R)) {
    v.witnesses["precondition_VR_small"] = 0.0;
    return v;
  }
  if (!(R * R >= kKappaPsi * mass * mass / delta)) {
    v.witnesses["precondition_R_large"] = 0.0;
    return v;
  }
  double cinf = Constants::Cinf();
  double arg = std::pow(8.0 + delta, 2.0 / 3.0) / std::pow(1.0 - delta, 2.0 / 3.0) *
               std::pow(Constants::Cinf14(), 1.0 / 3.0) * std::pow(energy, 2.0 / 3.0) * lv.value /
               std::pow(mass, 7.0 / 3.0);
  double threshold = std::sqrt(6.0) * std::pow(8.0 + delta, 1.0 / 6.0) *
                     std::pow(1.0 - delta, 1.0 / 3.0) * std::pow(me, 1.0 / 6.0) /
                     std::pow(cinf, 7.0 / 3.0) * g(arg);
  v.witnesses["arg"] = arg;
  v.witnesses["threshold"] = threshold;
  v.witnesses["vrt_over_m"] = lv.rate / mass;
  if (lv.rate / mass < threshold) v.verdict = Verdict::BlowUp;
  return v;
}

CriterionVerdict mass_concentration(const RadialField& field, const GroundState& ground,
                                    double delta) {
  if (!(delta > 0.0) || delta > kDeltaMax)
    throw DomainError("mass_concentration: delta must lie in (0, 0.1]");
  if (!field.is_real(1e-10))
    throw DomainError("mass_concentration: inapplicable to complex data");
  Diagnostics d = compute_diagnostics(field, ground, false);
  CriterionVerdict v{CriterionId::MassConcentration};
  double me = d.mass * d.energy;
  v.witnesses = {{"me", me}, {"delta", delta}, {"mass", d.mass}, {"energy", d.energy}};
  if (!(me > 1.0)) {
    v.witnesses["precondition_me_gt_1"] = 0.0;
    return v;
  }
  double radius = std::sqrt(delta) * d.mass * std::pow(me, -1.0 / 3.0);
  auto w = simpson_weights(field.grid.n, field.grid.dr);
  double outside = 0.0;
  for (std::size_t k = 0; k <= field.grid.n; ++k) {
    double r = field.grid.r(k);
    if (r >= radius) outside += w[k] * std::norm(field.values[k]) * r * r;
  }
  double fraction = 4.0 * kPi * outside / d.mass;
  double bound = delta * delta * std::pow(me, -2.0 / 3.0);
  v.witnesses["ball_radius"] = radius;
  v.witnesses["outside_fraction"] = fraction;
  v.witnesses["bound"] = bound;
  if (fraction <= bound) v.verdict = Verdict::BlowUp;
  return v;
}

double lushnikov_simple_margin(double mass, double energy, double variance, double e_real) {
  return std::sqrt(1.5) * mass / std::sqrt(energy * variance) +
         (8.0 / 3.0) * e_real * variance / (mass * mass) - 3.0;
}

double adapted_simple_margin(double mass, double energy, double variance, double e_real) {
  double C = Constants::C();
  return std::pow(mass, 1.5) / (std::pow(C, 7.0) * std::sqrt(variance)) +
         4.0 * e_real * variance / (mass * mass) -
         3.0 * std::cbrt(mass * energy / Constants::C14());
}

bool lushnikov_fires_simple(const Diagnostics& d) {
  if (!(d.energy > 0.0) || !d.phase_split) return false;
  double omega = 8.0 * d.energy * d.variance / (3.0 * d.mass * d.mass);
  double margin = lushnikov_simple_margin(d.mass, d.energy, d.variance, d.e_real);
  if (d.variance_rate >= 0.0) return omega < 1.0 && margin > 0.0;
  if (omega < 1.0) return true;
  if (omega == 1.0) return d.variance_rate < 0.0;
  return margin < 0.0;
}

bool adapted_fires_simple(const Diagnostics& d) {
  if (!(d.energy > 0.0) || !d.phase_split) return false;
  double kappa = 4.0 * std::pow(Constants::C14(), 1.0 / 3.0) * std::pow(d.energy, 2.0 / 3.0) *
                 d.variance / std::pow(d.mass, 7.0 / 3.0);
  double margin = adapted_simple_margin(d.mass, d.energy, d.variance, d.e_real);
  if (d.variance_rate >= 0.0) return kappa < 1.0 && margin > 0.0;
  if (kappa < 1.0) return true;
  if (kappa == 1.0) return d.variance_rate < 0.0;
  return margin < 0.0;
}

InequalityReport verify_inequalities(const RadialField& field, const GroundState& ground) {
  Diagnostics d = compute_diagnostics(field, ground, false);
  InequalityReport rep;
  double im_term = d.variance_rate / 4.0;
  rep.uncertainty_residual = (4.0 / 9.0) * d.variance * d.grad_sq - d.mass * d.mass -
                             (4.0 / 9.0) * im_term * im_term;
  double C = Constants::C();
  double rhs = C * std::pow(d.variance, 3.0 / 14.0) * std::pow(d.l4_fourth, 1.0 / 7.0);
  rep.interpolation_residual = rhs - std::sqrt(d.mass);
  rep.lagrangian = std::pow(d.variance, 3.0 / 14.0) * std::pow(d.l4_fourth, 1.0 / 7.0) /
                   std::sqrt(d.mass);
  rep.lagrangian_bound = 1.0 / C;
  rep.extremality_gap = rep.lagrangian - rep.lagrangian_bound;
  return rep;
}

std::vector<CriterionVerdict> evaluate_all(const Diagnostics& d, const RadialField* field,
                                           const GroundState& ground, double delta, double R) {
  std::vector<CriterionVerdict> rows;
  rows.push_back(classify_dhr(d));
  rows.push_back(negative_energy(d));
  rows.push_back(lushnikov(d));
  rows.push_back(adapted(d));
  if (field) {
    double r_min = std::sqrt(kKappaPsi * d.mass * d.mass / delta);
    double r_used = R > 0.0 ? R : 1.0000001 * r_min;
    CriterionVerdict loc;
    if (2.0 * r_used > field->grid.r_max()) {
      loc.id = CriterionId::RadialLocalized;
      loc.witnesses = {{"precondition_grid_covers_2R", 0.0}, {"R", r_used}};
    } else {
      loc = radial_localized(localized_variance(*field, r_used), d.mass, d.energy, r_used, delta);
    }
    rows.push_back(loc);
    CriterionVerdict mc;
    if (field->is_real(1e-10)) {
      mc = mass_concentration(*field, ground, delta);
    } else {
      mc.id = CriterionId::MassConcentration;
      mc.witnesses = {{"precondition_real_data", 0.0}};
    }
    rows.push_back(mc);
  }
  return rows;
}

}  // namespace criteria
}  // namespace nls
