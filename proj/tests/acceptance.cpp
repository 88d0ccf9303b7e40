// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Individual criteria can be selected by number on the
// command line: ./acceptance 1 2 3

#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "nls/criteria.hpp"
#include "nls/ground_state.hpp"
#include "nls/profiles.hpp"
#include "nls/rootfind.hpp"
#include "nls/scan.hpp"
#include "nls/solver.hpp"
#include "nls/tables.hpp"
#include "oracle.hpp"

using namespace nls;
using criteria::Verdict;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_ground() {
  const GroundState& gs = shared_ground_state();
  double res3 = std::fabs(gs.grad_sq / gs.mass_sq - 3.0) / 3.0;
  double res4 = std::fabs(gs.l4_fourth / gs.mass_sq - 4.0) / 4.0;
  bool ok = std::fabs(gs.mass_sq - 18.94) <= 0.05 && std::fabs(gs.var - 20.32) <= 0.05 &&
            std::fabs(gs.hhalf_sq - 27.727) <= 0.03 && res3 <= 1e-6 && res4 <= 1e-6;
  report(1, ok, "ground state norms and Pohozhaev ratios",
         "mass=" + fmt(gs.mass_sq) + " var=" + fmt(gs.var) + " hhalf=" + fmt(gs.hhalf_sq) +
             " res3=" + fmt(res3) + " res4=" + fmt(res4));
}

// ---------------------------------------------------------------- criterion 2
void criterion_inequalities() {
  const GroundState& gs = shared_ground_state();
  bool ok = true;
  std::string detail;

  RadialGrid eg = make_grid(2.0, 4000);
  RadialField phi;
  phi.grid = eg;
  phi.values.assign(eg.points(), 0.0);
  for (std::size_t k = 0; k <= eg.n; ++k) {
    double r = eg.r(k);
    if (r < 1.0) phi.values[k] = std::sqrt(1.0 - r * r);
  }
  auto rep = criteria::verify_inequalities(phi, gs);
  double l14 = std::pow(rep.lagrangian, 14.0);
  double target = std::pow(3.0, 5.0) * 25.0 / (4.0 * std::pow(7.0, 5.0) * kPi * kPi);
  bool extremal_ok = std::fabs(l14 - target) <= 1e-4 * target;
  ok = ok && extremal_ok;
  detail += "L14=" + fmt(l14) + " target=" + fmt(target);

  RadialGrid grid = make_grid(25.0, 4096);
  std::mt19937 rng(20250811);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    RadialField f = oracle::random_mixture(rng, grid);
    Diagnostics d = compute_diagnostics(f, gs, false);
    if (d.mass < 1e-12) continue;
    auto r = criteria::verify_inequalities(f, gs);
    if (r.uncertainty_residual < -1e-10 * (4.0 / 9.0) * d.variance * d.grad_sq) ++bad;
    if (r.interpolation_residual < -1e-10 * std::sqrt(d.mass)) ++bad;
  }
  ok = ok && bad == 0;
  detail += " random_violations=" + std::to_string(bad);

  RadialField gf = sample(Gaussian{1.3, 0.9, 0.45}, gs, grid);
  auto grep = criteria::verify_inequalities(gf, gs);
  Diagnostics dg = compute_diagnostics(gf, gs, false);
  double sat = std::fabs(grep.uncertainty_residual) /
               ((4.0 / 9.0) * dg.variance * dg.grad_sq);
  ok = ok && sat <= 1e-8;
  detail += " gaussian_saturation=" + fmt(sat);

  report(2, ok, "sharp interpolation constant and inequality checks", detail);
}

// ---------------------------------------------------------------- criterion 3
struct CoefficientSet {
  std::string family;
  Profile base;
  double pos_e, mg, me_lo, me_hi, h12, lush, adapt;  // h12 < 0 means not listed
};

void criterion_coefficients() {
  const GroundState& gs = shared_ground_state();
  std::vector<CoefficientSet> sets = {
      {"gaussian", Gaussian{1, 1, 0}, 2.91, 2.19, 1.92, 2.69, 2.10, 2.38, 2.45},
      {"supergaussian", SuperGaussian{1, 1, 0}, 3.53, 2.10, 1.71, 3.44, -1.0, 3.00, 2.89},
      {"offcentered", OffCentered{1, 1, 0}, 7.11, 3.46, 2.73, 7.04, 3.43, 6.38, 5.93},
  };
  bool ok = true;
  std::string detail;
  for (const auto& set : sets) {
    auto diag = [&](double p) {
      return closed_form_diagnostics(with_param(set.base, "p", p), gs, false).d;
    };
    double pos_e = bisect([&](double p) { return diag(p).energy; }, 0.1, 30.0);
    double mg = bisect([&](double p) { return diag(p).eta - 1.0; }, 0.1, pos_e);
    auto me = find_roots([&](double p) { return diag(p).me_ratio - 1.0; }, 0.05,
                         pos_e * (1.0 - 1e-9), 4000);
    auto fires = [&](double p, auto&& crit) {
      return crit(diag(p)).verdict == Verdict::BlowUp ? 1.0 : -1.0;
    };
    double lush = bisect([&](double p) { return fires(p, criteria::lushnikov); }, 0.5 * pos_e,
                         pos_e * (1.0 - 1e-9));
    double adapt = bisect([&](double p) { return fires(p, criteria::adapted); }, 0.5 * pos_e,
                          pos_e * (1.0 - 1e-9));
    double h12 = -1.0;
    if (set.h12 > 0.0) {
      auto pd = closed_form_diagnostics(with_param(set.base, "p", 1.0), gs, true);
      h12 = std::sqrt(gs.hhalf_sq / pd.d.hhalf_sq);
    }

    auto within = [&](double got, double want) { return std::fabs(got - want) <= 0.01; };
    bool set_ok = within(pos_e, set.pos_e) && within(mg, set.mg) && me.size() == 2 &&
                  within(me.front(), set.me_lo) && within(me.back(), set.me_hi) &&
                  within(lush, set.lush) && within(adapt, set.adapt) &&
                  (set.h12 < 0.0 || within(h12, set.h12));
    ok = ok && set_ok;
    detail += set.family + "[" + fmt(pos_e) + "/" + fmt(mg) + "/" + fmt(me.front()) + "-" +
              fmt(me.back()) + (set.h12 > 0 ? "/" + fmt(h12) : "") + "/" + fmt(lush) + "/" +
              fmt(adapt) + "] ";
  }
  report(3, ok, "real-data criterion coefficients within 0.01", detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion_tables() {
  const GroundState& gs = shared_ground_state();
  bool ok = true;
  std::string detail;
  int checked = 0, skipped = 0;
  for (const std::string& id :
       {"T1:ME", "T1:Lgauss", "T1:LAgauss", "T3:MEphase", "T4:L-phase", "T4:LAphase"}) {
    double worst = 0.0;
    for (const auto& e : generate_table(id, gs, default_reference_path())) {
      if (!e.reference) continue;
      if (e.suspect) {
        ++skipped;
        std::printf("  note: %s %s=%s %s ref=%g recomputed=%g marked as misprint, excluded\n",
                    id.c_str(), e.param_name.c_str(), fmt(e.param).c_str(),
                    e.quantity.c_str(), *e.reference, e.computed);
        continue;
      }
      ++checked;
      worst = std::max(worst, std::fabs(e.computed - *e.reference));
    }
    if (worst > 0.02) ok = false;
    detail += id + " worst=" + fmt(worst) + " ";
  }
  detail += "entries=" + std::to_string(checked) + " misprints_excluded=" +
            std::to_string(skipped);
  report(4, ok, "quadratic-phase root tables within 0.02", detail);
}

// ---------------------------------------------------------------- criterion 5
void criterion_thresholds() {
  const GroundState& gs = shared_ground_state();
  struct Point {
    std::string name;
    Profile base;
    std::pair<double, double> bracket;
    double target, tol;
  };
  std::vector<Point> points = {
      {"gaussian", Gaussian{1, 1, 0}, {2.00, 2.16}, 2.075, 0.03},
      {"supergaussian", SuperGaussian{1, 1, 0}, {1.94, 2.10}, 2.015, 0.03},
      {"offcentered", OffCentered{1, 1, 0}, {3.45, 3.70}, 3.575, 0.05},
      {"oscillatory", Oscillatory{1, 0, 0}, {2.85, 3.02}, 2.935, 0.05},
  };
  EvolveParams ep;
  ep.t_max = 40.0;
  ep.order = 2;
  ep.sponge.strength = 10.0;
  RadialGrid grid = make_grid(30.0, 8192);

  std::vector<std::string> notes(points.size());
  std::vector<bool> oks(points.size(), false);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < points.size(); ++i)
    pool.emplace_back([&, i] {
      try {
        auto res = find_threshold(points[i].base, "p", points[i].bracket, 0.01, ep, grid, gs);
        double mid = 0.5 * (res.lo + res.hi);
        bool in_range = std::fabs(mid - points[i].target) <= points[i].tol;
        bool separated = !res.inconclusive && res.lo < res.hi;
        oks[i] = in_range && separated;
        notes[i] = points[i].name + "=[" + fmt(res.lo) + "," + fmt(res.hi) + "]" +
                   (res.inconclusive ? " INCONCLUSIVE" : "");
      } catch (const std::exception& e) {
        notes[i] = points[i].name + " failed: " + e.what();
      }
    });
  for (auto& th : pool) th.join();
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ok = ok && oks[i];
    detail += notes[i] + " ";
  }
  report(5, ok, "simulation thresholds match the published brackets", detail);
}

// ---------------------------------------------------------------- criterion 6
void criterion_consistency() {
  const GroundState& gs = shared_ground_state();

  // lattice: per family/phase, points straddling the analytic boundaries
  std::vector<Profile> lattice;
  auto add_family = [&](const Profile& base) {
    auto diag = [&](double p) {
      return closed_form_diagnostics(with_param(base, "p", p), gs, false).d;
    };
    auto scatter_fires = [&](const Diagnostics& d) {
      return d.me_ratio < 1.0 && d.eta < 1.0;
    };
    auto blow_fires = [&](const Diagnostics& d) {
      return d.energy < 0.0 ||
             criteria::lushnikov(d).verdict == Verdict::BlowUp ||
             criteria::adapted(d).verdict == Verdict::BlowUp ||
             criteria::classify_dhr(d).verdict == Verdict::BlowUp;
    };
    double p_scatter_edge = bisect(
        [&](double p) { return scatter_fires(diag(p)) ? -1.0 : 1.0; }, 0.05, 20.0);
    double p_blow_edge = bisect([&](double p) { return blow_fires(diag(p)) ? 1.0 : -1.0; },
                                p_scatter_edge * 0.9, 40.0);
    for (double f : {0.5, 0.75, 0.9}) lattice.push_back(with_param(base, "p", f * p_scatter_edge));
    for (double f : {1.06, 1.3, 1.8}) lattice.push_back(with_param(base, "p", f * p_blow_edge));
  };
  for (double gamma : {0.0, 0.5, -0.5}) {
    add_family(Gaussian{1, 1, gamma});
    add_family(SuperGaussian{1, 1, gamma});
    add_family(OffCentered{1, 1, gamma});
    add_family(Oscillatory{1, 1.5, gamma});
  }
  add_family(Gaussian{1, 2, 0});
  add_family(SuperGaussian{1, 2, 0});
  add_family(Oscillatory{1, 0.5, 0});
  add_family(Oscillatory{1, 2.5, -0.5});
  for (double lg : {0.6, 0.85}) lattice.push_back(QProfile{lg, 0});
  for (double lg : {1.12, 1.3}) lattice.push_back(QProfile{lg, 0});
  lattice.push_back(QProfile{1.0, -0.25});
  lattice.push_back(QProfile{1.0, -0.4});
  lattice.push_back(QProfile{0.9, 0.1});
  lattice.push_back(QProfile{1.0, 0.25});

  EvolveParams ep;
  ep.t_max = 40.0;
  ep.order = 2;
  ep.sponge.strength = 10.0;
  RadialGrid grid = make_grid(30.0, 2048);

  std::atomic<int> violations{0}, sims{0}, predicted{0};
  std::atomic<std::size_t> next{0};
  std::vector<std::string> bad(lattice.size());
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= lattice.size()) return;
      const Profile& prof = lattice[i];
      Diagnostics d = closed_form_diagnostics(prof, gs, false).d;
      bool expect_blow = d.energy < 0.0 ||
                         criteria::lushnikov(d).verdict == Verdict::BlowUp ||
                         criteria::adapted(d).verdict == Verdict::BlowUp ||
                         criteria::classify_dhr(d).verdict == Verdict::BlowUp;
      bool expect_scatter = criteria::classify_dhr(d).verdict == Verdict::Scatter;
      if (!expect_blow && !expect_scatter) continue;
      ++predicted;
      SimulationOutcome out = evolve(sample(prof, gs, grid), gs, ep);
      ++sims;
      if ((expect_blow && out.classification != Outcome::BlowUp) ||
          (expect_scatter && out.classification != Outcome::Scattered)) {
        ++violations;
        bad[i] = format_profile(prof) + " expected " +
                 (expect_blow ? "BlowUp" : "Scattered") + " got " +
                 to_string(out.classification);
      }
    }
  };
  std::size_t workers = std::min<std::size_t>(default_worker_count(), 8);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  for (const auto& b : bad)
    if (!b.empty()) std::printf("  violation: %s\n", b.c_str());
  bool ok = violations == 0 && lattice.size() >= 100;
  report(6, ok, "analytic verdicts agree with simulation over the lattice",
         "points=" + std::to_string(lattice.size()) + " predicted=" +
             std::to_string(predicted.load()) + " sims=" + std::to_string(sims.load()) +
             " violations=" + std::to_string(violations.load()));
}

// ---------------------------------------------------------------- criterion 7
void criterion_conservation() {
  const GroundState& gs = shared_ground_state();
  bool ok = true;
  std::string detail;

  {
    EvolveParams ep;
    ep.t_max = 12.0;
    RadialGrid grid = make_grid(30.0, 8192);
    SimulationOutcome out = evolve(sample(Gaussian{2.07, 1, 0}, gs, grid), gs, ep);
    double mass_rate = out.mass_drift / out.t_end;
    double energy_rate = out.energy_drift / out.t_end;
    ok = ok && out.classification == Outcome::Scattered && mass_rate < 1e-6 &&
         energy_rate < 1e-6;
    detail += "scatter_run=" + std::string(to_string(out.classification)) +
              " mass_drift/t=" + fmt(mass_rate) + " energy_drift/t=" + fmt(energy_rate);
  }

  {
    EvolveParams ep;
    ep.t_max = 2.0;
    ep.dt0 = 5e-4;
    ep.sample_dt = 0.1;
    RadialGrid grid = make_grid(30.0, 8192);
    SimulationOutcome out = evolve(sample(QProfile{1, 0}, gs, grid), gs, ep);
    double worst = 0.0;
    double amp0 = out.series.front().amp_max;
    for (const auto& p : out.series)
      worst = std::max(worst, std::fabs(p.amp_max - amp0) / amp0);
    ok = ok && worst <= 0.02;
    detail += " soliton_amp_dev=" + fmt(worst);
  }

  {
    auto run = [&](std::size_t n, double dt, double interval) {
      EvolveParams p;
      p.t_max = 0.8;
      p.adaptive = false;
      p.order = 2;
      p.dt0 = dt;
      p.sample_dt = interval;
      RadialField f = sample(Gaussian{1.5, 1, 0}, gs, make_grid(30.0, n));
      return virial_check(evolve(f, gs, p));
    };
    VirialResiduals coarse = run(2048, 2e-3, 0.02);
    VirialResiduals fine = run(4096, 1e-3, 0.01);
    double ratio_g = coarse.max_abs_grad / fine.max_abs_grad;
    double ratio_l = coarse.max_abs_l4 / fine.max_abs_l4;
    ok = ok && ratio_g > 2.8 && ratio_g < 5.7 && ratio_l > 2.8 && ratio_l < 5.7;
    detail += " virial_ratio_grad=" + fmt(ratio_g) + " virial_ratio_l4=" + fmt(ratio_l);
  }

  report(7, ok, "conservation, soliton persistence and virial convergence", detail);
}

// ---------------------------------------------------------------- criterion 8
void criterion_excluded() {
  std::printf(
      "SKIP criterion 8: figure-density sweeps and conjecture probes are excluded from hard "
      "acceptance; run them via `nlscollapse scan` (see README, --conjecture 1|3|4)\n");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto want = [&](int id) { return selected.empty() || selected.count(id) > 0; };

  if (want(1)) criterion_ground();
  if (want(2)) criterion_inequalities();
  if (want(3)) criterion_coefficients();
  if (want(4)) criterion_tables();
  if (want(5)) criterion_thresholds();
  if (want(6)) criterion_consistency();
  if (want(7)) criterion_conservation();
  if (want(8)) criterion_excluded();

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
