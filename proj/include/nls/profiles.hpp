#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nls/ground_state.hpp"
#include "nls/quantities.hpp"
#include "nls/radial_field.hpp"

namespace nls {

// The five initial-data families. All carry an optional quadratic phase
// e^{i gamma r^2}; amplitude parameters are strictly positive.
struct QProfile {
  double lambda = 1.0;  // u0 = lambda^{3/2} Q(lambda r) e^{i gamma r^2}
  double gamma = 0.0;
};
struct Gaussian {
  double p = 1.0, alpha = 1.0, gamma = 0.0;  // p e^{-alpha r^2/2} e^{i gamma r^2}
};
struct SuperGaussian {
  double p = 1.0, alpha = 1.0, gamma = 0.0;  // p e^{-alpha r^4/2} e^{i gamma r^2}
};
struct OffCentered {
  double p = 1.0, alpha = 1.0, gamma = 0.0;  // p r^2 e^{-alpha r^2} e^{i gamma r^2}
};
struct Oscillatory {
  double p = 1.0, beta = 0.0, gamma = 0.0;  // p cos(beta r) e^{-r^2} e^{i gamma r^2}
};

using Profile = std::variant<QProfile, Gaussian, SuperGaussian, OffCentered, Oscillatory>;

// m, a, b, v factors of the oscillatory family's closed forms.
struct OscillatoryHelpers {
  double m = 0.0, a = 0.0, b = 0.0, v = 0.0;
};
OscillatoryHelpers oscillatory_helpers(double beta, double gamma);

std::string family_name(const Profile& profile);
double quadratic_phase(const Profile& profile);

// Width of the profile core; sampling grids must resolve it.
double core_width(const Profile& profile);

// Pointwise evaluation on the grid. Refuses grids that under-resolve the
// core or the oscillation wavelength.
RadialField sample(const Profile& profile, const GroundState& ground, const RadialGrid& grid);

// Exact-formula diagnostics; fields without a closed form are filled by
// quadrature on samples and listed in from_quadrature.
struct ProfileDiagnostics {
  Diagnostics d;
  std::vector<std::string> from_quadrature;
};
ProfileDiagnostics closed_form_diagnostics(const Profile& profile, const GroundState& ground,
                                           bool with_hhalf = true);

// Flat key-value serialization: "family=gaussian p=2.07 alpha=1 gamma=0".
Profile parse_profile(const std::map<std::string, std::string>& kv);
std::string format_profile(const Profile& profile);

// Named-parameter access used by scans (p, alpha, gamma, beta, lambda).
double get_param(const Profile& profile, const std::string& name);
Profile with_param(const Profile& profile, const std::string& name, double value);

}  // namespace nls
