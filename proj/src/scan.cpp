#include "nls/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "nls/rootfind.hpp"

namespace nls {

namespace {

Outcome classify_once(const Profile& profile, double value, const std::string& vary,
                      const EvolveParams& params, const RadialGrid& grid,
                      const GroundState& ground, int& sims) {
  Profile p = with_param(profile, vary, value);
  RadialField u0 = sample(p, ground, grid);
  ++sims;
  return evolve(u0, ground, params).classification;
}

// Undetermined gets one retry with a doubled horizon and halved grid spacing.
Outcome classify_with_retry(const Profile& profile, double value, const std::string& vary,
                            const EvolveParams& params, const RadialGrid& grid,
                            const GroundState& ground, int& sims) {
  Outcome o = classify_once(profile, value, vary, params, grid, ground, sims);
  if (o != Outcome::Undetermined) return o;
  EvolveParams retry = params;
  retry.t_max *= 2.0;
  RadialGrid fine = grid;
  fine.n *= 2;
  fine.dr *= 0.5;
  return classify_once(profile, value, vary, retry, fine, ground, sims);
}

EndpointSummary summarize(const Profile& profile, double value, const std::string& vary,
                          Outcome outcome, const GroundState& ground) {
  EndpointSummary s;
  s.value = value;
  s.outcome = outcome;
  Profile p = with_param(profile, vary, value);
  auto pd = closed_form_diagnostics(p, ground, false);
  s.verdicts = criteria::evaluate_all(pd.d, nullptr, ground);
  return s;
}

}  // namespace

ThresholdResult find_threshold(const Profile& base, const std::string& vary,
                               std::pair<double, double> bracket, double tol,
                               const EvolveParams& params, const RadialGrid& grid,
                               const GroundState& ground) {
  if (!(tol > 0.0)) throw DomainError("find_threshold: tol must be positive");
  ThresholdResult res;
  res.base = base;
  res.varied = vary;

  int sims = 0;
  double a = bracket.first, b = bracket.second;
  Outcome oa = classify_with_retry(base, a, vary, params, grid, ground, sims);
  Outcome ob = classify_with_retry(base, b, vary, params, grid, ground, sims);
  if (oa == ob || (oa != Outcome::Scattered && oa != Outcome::BlowUp) ||
      (ob != Outcome::Scattered && ob != Outcome::BlowUp))
    throw DomainError("find_threshold: bracket endpoints classify as " + to_string(oa) + "/" +
                      to_string(ob) + "; need one Scattered and one BlowUp");
  if (oa == Outcome::BlowUp) std::swap(a, b);  // a = scatter side from here on

  while (std::fabs(b - a) > tol) {
    double mid = 0.5 * (a + b);
    Outcome om = classify_with_retry(base, mid, vary, params, grid, ground, sims);
    if (om == Outcome::Scattered) {
      a = mid;
    } else if (om == Outcome::BlowUp) {
      b = mid;
    } else {
      res.inconclusive = true;
      res.note = "midpoint " + std::to_string(mid) + " stayed " + to_string(om) + " after retry";
      break;
    }
  }

  res.lo = a;
  res.hi = b;
  res.scatter_end = summarize(base, a, vary, Outcome::Scattered, ground);
  res.blowup_end = summarize(base, b, vary, Outcome::BlowUp, ground);
  res.simulations = sims;
  return res;
}

CriterionCurves criterion_curves(const Profile& base, const std::string& vary, double vmax,
                                 const GroundState& ground) {
  CriterionCurves c;
  auto diag = [&](double v) {
    return closed_form_diagnostics(with_param(base, vary, v), ground, false).d;
  };
  auto first_flip = [&](const std::function<bool(const Diagnostics&)>& fired) {
    const std::size_t scan = 2000;
    bool prev = fired(diag(vmax * 1e-4));
    double prev_v = vmax * 1e-4;
    for (std::size_t i = 1; i <= scan; ++i) {
      double v = vmax * static_cast<double>(i) / static_cast<double>(scan);
      bool now = fired(diag(v));
      if (now != prev)
        return bisect([&](double x) { return fired(diag(x)) ? 1.0 : -1.0; }, prev_v, v, 1e-10);
      prev = now;
      prev_v = v;
    }
    return 0.0;
  };

  c.p_dhr_scatter = first_flip([](const Diagnostics& d) {
    return !(d.me_ratio < 1.0 && d.eta < 1.0);
  });
  c.p_lushnikov = first_flip([](const Diagnostics& d) {
    return d.energy < 0.0 || criteria::lushnikov(d).verdict == criteria::Verdict::BlowUp;
  });
  c.p_adapted = first_flip([](const Diagnostics& d) {
    return d.energy < 0.0 || criteria::adapted(d).verdict == criteria::Verdict::BlowUp;
  });

  // hhalf scales exactly as the square of the varied amplitude for p; solve
  // directly when possible, otherwise scan.
  if (vary == "p") {
    auto pd = closed_form_diagnostics(with_param(base, vary, 1.0), ground, true);
    c.p_hhalf = std::sqrt(ground.hhalf_sq / pd.d.hhalf_sq);
  } else {
    c.p_hhalf = first_flip([&](const Diagnostics&) { return false; });  // not defined
  }
  return c;
}

std::size_t default_worker_count() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("NLS_COLLAPSE_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
  }
  return n;
}

std::vector<SweepRow> sweep(const std::vector<SweepPoint>& points, const std::string& vary,
                            double tol, const EvolveParams& params, const RadialGrid& grid,
                            const GroundState& ground, std::size_t workers) {
  if (points.empty()) throw DomainError("sweep: empty lattice");
  if (workers == 0) workers = default_worker_count();
  workers = std::min(workers, points.size());

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      SweepRow& row = rows[i];
      try {
        row.threshold = find_threshold(points[i].base, vary, points[i].bracket, tol, params,
                                       grid, ground);
        double vmax = 2.0 * std::max(points[i].bracket.first, points[i].bracket.second);
        row.curves = criterion_curves(points[i].base, vary, vmax, ground);
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace nls
