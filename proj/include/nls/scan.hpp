#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nls/criteria.hpp"
#include "nls/profiles.hpp"
#include "nls/solver.hpp"

namespace nls {

struct EndpointSummary {
  double value = 0.0;
  Outcome outcome = Outcome::Undetermined;
  double t_end = 0.0;
  std::vector<criteria::CriterionVerdict> verdicts;
};

struct ThresholdResult {
  Profile base;           // template with the varied parameter at the scatter end
  std::string varied;     // parameter name
  double lo = 0.0, hi = 0.0;  // scatter side, blow-up side
  double width() const { return std::fabs(hi - lo); }
  bool inconclusive = false;
  std::string note;
  EndpointSummary scatter_end, blowup_end;
  int simulations = 0;
};

// Bisection on the classification predicate. The bracket endpoints must
// classify Scattered and BlowUp (either orientation); Undetermined midpoints
// get one retry at doubled t_max and doubled grid resolution.
ThresholdResult find_threshold(const Profile& base, const std::string& vary,
                               std::pair<double, double> bracket, double tol,
                               const EvolveParams& params, const RadialGrid& grid,
                               const GroundState& ground);

// Smallest varied-parameter values at which the analytic criteria flip, used
// as overlay columns in sweep output. p_hhalf solves ||u||_{H^1/2} = ||Q||.
struct CriterionCurves {
  double p_dhr_scatter = 0.0;  // DHR scattering holds below this
  double p_lushnikov = 0.0;    // Lushnikov-or-negative-energy fires above this
  double p_adapted = 0.0;
  double p_hhalf = 0.0;
};
CriterionCurves criterion_curves(const Profile& base, const std::string& vary, double vmax,
                                 const GroundState& ground);

struct SweepPoint {
  Profile base;
  std::pair<double, double> bracket;
};

struct SweepRow {
  ThresholdResult threshold;
  CriterionCurves curves;
  bool failed = false;
  std::string error;
};

// Independent find_threshold per point, executed by a worker pool.
std::vector<SweepRow> sweep(const std::vector<SweepPoint>& points, const std::string& vary,
                            double tol, const EvolveParams& params, const RadialGrid& grid,
                            const GroundState& ground, std::size_t workers);

std::size_t default_worker_count();

}  // namespace nls
