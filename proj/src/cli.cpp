#include "nls/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nls/criteria.hpp"
#include "nls/io.hpp"
#include "nls/profiles.hpp"
#include "nls/scan.hpp"
#include "nls/solver.hpp"
#include "nls/tables.hpp"

namespace nls {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::map<std::string, std::string> kv;       // key=value tokens
  std::map<std::string, std::string> flags;    // --flag value
  std::vector<std::pair<std::string, std::string>> fixes;  // repeated --fix k=v
};

Args parse_args(const std::vector<std::string>& tokens) {
  Args a;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t.rfind("--", 0) == 0) {
      std::string name = t.substr(2);
      if (i + 1 >= tokens.size()) throw UsageError("flag --" + name + " needs a value");
      std::string value = tokens[++i];
      if (name == "fix")
        a.fixes.push_back(split_kv(value));
      else if (a.flags.count(name))
        throw UsageError("duplicate flag --" + name);
      else
        a.flags[name] = value;
    } else {
      auto [k, v] = split_kv(t);
      if (a.kv.count(k)) throw UsageError("duplicate key " + k);
      a.kv[k] = v;
    }
  }
  return a;
}

double to_num(const std::string& s, const std::string& what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw UsageError("bad number for " + what + ": " + s);
  return v;
}

double take_num(std::map<std::string, std::string>& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  double v = to_num(it->second, key);
  kv.erase(it);
  return v;
}

const std::set<std::string> kProfileKeys = {"family", "p", "alpha", "gamma", "beta", "lambda"};

Profile profile_from(const std::map<std::string, std::string>& kv) {
  std::map<std::string, std::string> pk;
  for (const auto& [k, v] : kv)
    if (kProfileKeys.count(k)) pk[k] = v;
  return parse_profile(pk);
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    const std::set<std::string>& known) {
  for (const auto& [k, v] : kv) {
    (void)v;
    if (!known.count(k) && !kProfileKeys.count(k)) throw UsageError("unknown key: " + k);
  }
}

EvolveParams solver_params(std::map<std::string, std::string>& kv) {
  EvolveParams ep;
  ep.t_max = take_num(kv, "t_max", ep.t_max);
  ep.dt0 = take_num(kv, "dt0", ep.dt0);
  ep.dt_floor = take_num(kv, "dt_floor", ep.dt_floor);
  ep.amp_blowup_factor = take_num(kv, "amp_factor", ep.amp_blowup_factor);
  ep.grad_blowup_factor = take_num(kv, "grad_factor", ep.grad_blowup_factor);
  ep.scatter_l4_fraction = take_num(kv, "scatter_fraction", ep.scatter_l4_fraction);
  ep.sponge.strength = take_num(kv, "sponge_strength", ep.sponge.strength);
  ep.sponge.width_frac = take_num(kv, "sponge_width", ep.sponge.width_frac);
  ep.conservation_tol = take_num(kv, "conservation_tol", ep.conservation_tol);
  ep.sample_dt = take_num(kv, "sample_dt", ep.sample_dt);
  ep.adaptive = take_num(kv, "adaptive", 1.0) != 0.0;
  ep.order = static_cast<int>(take_num(kv, "order", 4.0));
  return ep;
}

RadialGrid grid_from(std::map<std::string, std::string>& kv, double rmax_default = 30.0,
                     std::size_t n_default = 8192) {
  double rmax = take_num(kv, "rmax", rmax_default);
  double n = take_num(kv, "n", static_cast<double>(n_default));
  return make_grid(rmax, static_cast<std::size_t>(n));
}

void print_kv(const std::string& key, double value) {
  std::cout << key << " = " << fmt12(value) << "\n";
}

int cmd_ground(Args a) {
  double tol = take_num(a.kv, "tol", 1e-8);
  RadialGrid grid = grid_from(a.kv, 25.0, 10000);
  reject_unknown(a.kv, {});
  GroundState gs = solve_ground_state(grid, tol);
  print_kv("q0", gs.q0);
  print_kv("mass_sq", gs.mass_sq);
  print_kv("grad_sq", gs.grad_sq);
  print_kv("l4_fourth", gs.l4_fourth);
  print_kv("var", gs.var);
  print_kv("hhalf_sq", gs.hhalf_sq);
  print_kv("energy", gs.energy);
  print_kv("pohozhaev_grad_ratio", gs.grad_sq / gs.mass_sq);
  print_kv("pohozhaev_l4_ratio", gs.l4_fourth / gs.mass_sq);
  if (auto it = a.flags.find("csv"); it != a.flags.end()) {
    std::string csv = "r,Q\n";
    for (std::size_t k = 0; k <= gs.grid.n; ++k)
      csv += fmt12(gs.grid.r(k)) + "," + fmt12(gs.samples[k]) + "\n";
    atomic_write(it->second, csv);
    std::cout << "wrote " << it->second << "\n";
  }
  return 0;
}

RadialField field_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open field csv: " + path);
  std::vector<double> r;
  std::vector<std::complex<double>> u;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || !(std::isdigit(line[0]) || line[0] == '-' || line[0] == '+')) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double rv, re, im = 0.0;
    if (!(ss >> rv >> re)) throw DomainError("bad field csv row: " + line);
    ss >> im;
    r.push_back(rv);
    u.emplace_back(re, im);
  }
  if (r.size() < 9 || r.front() != 0.0) throw DomainError("field csv must start at r=0");
  double dr = r[1] - r[0];
  for (std::size_t k = 1; k < r.size(); ++k)
    if (std::fabs(r[k] - dr * static_cast<double>(k)) > 1e-9 * (1.0 + r[k]))
      throw DomainError("field csv grid must be uniform from 0");
  RadialField f;
  f.grid = RadialGrid{dr, r.size() - 1};
  f.values = std::move(u);
  return f;
}

int cmd_diag(Args a) {
  const GroundState& gs = shared_ground_state();
  Diagnostics d;
  std::string profile_str;
  if (auto it = a.flags.find("field"); it != a.flags.end()) {
    d = compute_diagnostics(field_from_csv(it->second), gs);
    profile_str = "field:" + it->second;
  } else {
    Profile p = profile_from(a.kv);
    reject_unknown(a.kv, {});
    profile_str = format_profile(p);
    d = closed_form_diagnostics(p, gs).d;
  }
  bool json = a.flags.count("json") > 0;
  if (json) {
    nlohmann::ordered_json j;
    j["profile"] = profile_str;
    j["mass"] = d.mass;
    j["energy"] = d.energy;
    j["momentum"] = d.momentum;
    j["grad_sq"] = d.grad_sq;
    j["l4_fourth"] = d.l4_fourth;
    j["variance"] = d.variance;
    j["variance_rate"] = d.variance_rate;
    j["eta"] = d.eta;
    j["me_ratio"] = d.me_ratio;
    j["hhalf_sq"] = d.hhalf_sq;
    j["trusted"] = d.trusted;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# " << profile_str << "\n";
    print_kv("mass", d.mass);
    print_kv("energy", d.energy);
    print_kv("momentum", d.momentum);
    print_kv("grad_sq", d.grad_sq);
    print_kv("l4_fourth", d.l4_fourth);
    print_kv("variance", d.variance);
    print_kv("variance_rate", d.variance_rate);
    print_kv("eta", d.eta);
    print_kv("me_ratio", d.me_ratio);
    print_kv("hhalf_sq", d.hhalf_sq);
    std::cout << "trusted = " << (d.trusted ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_criteria(Args a) {
  const GroundState& gs = shared_ground_state();
  double delta = to_num(a.flags.count("delta") ? a.flags.at("delta") : "0.01", "delta");
  double R = to_num(a.flags.count("R") ? a.flags.at("R") : "0", "R");
  Profile p = profile_from(a.kv);
  std::map<std::string, std::string> rest = a.kv;
  RadialGrid grid = grid_from(rest);
  reject_unknown(rest, {});
  auto pd = closed_form_diagnostics(p, gs, false);
  RadialField field = sample(p, gs, grid);
  auto rows = criteria::evaluate_all(pd.d, &field, gs, delta, R);

  std::string csv = "criterion,verdict,witnesses\n";
  for (const auto& row : rows) {
    std::string wit;
    for (const auto& [k, v] : row.witnesses) wit += k + "=" + fmt12(v) + ";";
    std::cout << criteria::to_string(row.id) << "  " << criteria::to_string(row.verdict) << "  "
              << wit << "\n";
    csv += criteria::to_string(row.id) + "," + criteria::to_string(row.verdict) + "," + wit + "\n";
  }
  if (auto it = a.flags.find("csv"); it != a.flags.end()) {
    atomic_write(it->second, csv);
    std::cout << "wrote " << it->second << "\n";
  }
  return 0;
}

int cmd_simulate(Args a) {
  const GroundState& gs = shared_ground_state();
  Profile p = profile_from(a.kv);
  std::map<std::string, std::string> rest;
  for (const auto& [k, v] : a.kv)
    if (!kProfileKeys.count(k)) rest[k] = v;
  EvolveParams ep = solver_params(rest);
  RadialGrid grid = grid_from(rest);
  reject_unknown(rest, {});

  RadialField u0 = sample(p, gs, grid);
  SimulationOutcome out = evolve(u0, gs, ep);

  std::string prefix = a.flags.count("out") ? a.flags.at("out") : "run";
  std::string csv = "t,mass,energy,grad_sq,l4_fourth,variance,amp_max,eta\n";
  for (const auto& s : out.series)
    csv += fmt12(s.t) + "," + fmt12(s.mass) + "," + fmt12(s.energy) + "," + fmt12(s.grad_sq) +
           "," + fmt12(s.l4_fourth) + "," + fmt12(s.variance) + "," + fmt12(s.amp_max) + "," +
           fmt12(s.eta) + "\n";
  atomic_write(prefix + ".csv", csv);

  nlohmann::ordered_json j;
  j["profile"] = format_profile(p);
  j["classification"] = to_string(out.classification);
  j["t_end"] = out.t_end;
  if (out.classification == Outcome::BlowUp) j["t_blowup_estimate"] = out.t_blowup_estimate;
  j["mass_drift"] = out.mass_drift;
  j["energy_drift"] = out.energy_drift;
  j["absorbed_mass"] = out.absorbed_mass;
  j["steps"] = out.steps;
  j["grid"] = {{"rmax", grid.r_max()}, {"n", grid.n}};
  j["params"] = {{"t_max", ep.t_max},
                 {"dt0", ep.dt0},
                 {"dt_floor", ep.dt_floor},
                 {"amp_factor", ep.amp_blowup_factor},
                 {"grad_factor", ep.grad_blowup_factor},
                 {"scatter_fraction", ep.scatter_l4_fraction},
                 {"sponge_strength", ep.sponge.strength},
                 {"sponge_width", ep.sponge.width_frac},
                 {"sample_dt", ep.sample_dt},
                 {"conservation_tol", ep.conservation_tol},
                 {"adaptive", ep.adaptive}};
  if (!out.note.empty()) j["note"] = out.note;
  atomic_write(prefix + ".json", j.dump(2) + "\n");

  std::cout << to_string(out.classification) << " t_end=" << fmt12(out.t_end)
            << " steps=" << out.steps << " wrote " << prefix << ".json " << prefix << ".csv\n";
  return out.classification == Outcome::Unreliable ? 2 : 0;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) out.push_back(to_num(item, "list entry"));
  if (out.empty()) throw UsageError("empty value list");
  return out;
}

int cmd_scan(Args a) {
  const GroundState& gs = shared_ground_state();
  if (a.flags.count("conjecture")) return -1;  // handled by caller

  if (!a.flags.count("family")) throw UsageError("scan needs --family");
  if (!a.flags.count("vary")) throw UsageError("scan needs --vary");
  if (!a.flags.count("bracket")) throw UsageError("scan needs --bracket lo:hi");

  std::string vary = a.flags.at("vary");
  std::string br = a.flags.at("bracket");
  auto colon = br.find(':');
  if (colon == std::string::npos) throw UsageError("bracket must be lo:hi");
  std::pair<double, double> bracket{to_num(br.substr(0, colon), "bracket lo"),
                                    to_num(br.substr(colon + 1), "bracket hi")};
  double tol = to_num(a.flags.count("tol") ? a.flags.at("tol") : "0.01", "tol");
  std::size_t workers =
      static_cast<std::size_t>(to_num(a.flags.count("workers") ? a.flags.at("workers") : "0",
                                      "workers"));

  std::map<std::string, std::string> base_kv{{"family", a.flags.at("family")}};
  std::vector<std::pair<std::string, std::vector<double>>> lattice_axes;
  for (const auto& [k, v] : a.fixes) {
    auto vals = parse_list(v);
    if (vals.size() == 1)
      base_kv[k] = fmt12(vals[0]);
    else
      lattice_axes.emplace_back(k, vals);
  }
  if (!base_kv.count(vary) && vary != "p") base_kv[vary] = "1";
  if (vary == "p" && !base_kv.count("p")) base_kv["p"] = "1";
  if (vary == "lambda" && !base_kv.count("lambda")) base_kv["lambda"] = "1";
  Profile base = parse_profile(base_kv);

  std::vector<SweepPoint> points;
  if (lattice_axes.empty()) {
    points.push_back({base, bracket});
  } else if (lattice_axes.size() == 1) {
    for (double v : lattice_axes[0].second)
      points.push_back({with_param(base, lattice_axes[0].first, v), bracket});
  } else {
    throw UsageError("scan supports at most one multi-valued --fix axis");
  }

  std::map<std::string, std::string> rest = a.kv;
  EvolveParams ep = solver_params(rest);
  RadialGrid grid = grid_from(rest);
  reject_unknown(rest, {});

  auto rows = sweep(points, vary, tol, ep, grid, gs, workers);

  std::string csv = "profile,varied,threshold_lo,threshold_hi,p_dhr_scatter,p_lushnikov,"
                    "p_adapted,p_hhalf,inconclusive,simulations,note\n";
  bool any_inconclusive = false;
  for (const auto& row : rows) {
    if (row.failed) {
      any_inconclusive = true;
      csv += ",,,,,,,,1,0," + row.error + "\n";
      std::cout << "point failed: " << row.error << "\n";
      continue;
    }
    const auto& t = row.threshold;
    any_inconclusive |= t.inconclusive;
    csv += format_profile(t.base) + "," + t.varied + "," + fmt12(t.lo) + "," + fmt12(t.hi) + "," +
           fmt12(row.curves.p_dhr_scatter) + "," + fmt12(row.curves.p_lushnikov) + "," +
           fmt12(row.curves.p_adapted) + "," + fmt12(row.curves.p_hhalf) + "," +
           (t.inconclusive ? "1" : "0") + "," + std::to_string(t.simulations) + "," + t.note +
           "\n";
    std::cout << format_profile(t.base) << "  " << vary << " in [" << fmt12(t.lo) << ", "
              << fmt12(t.hi) << "]" << (t.inconclusive ? "  INCONCLUSIVE" : "") << "\n";
  }
  if (auto it = a.flags.find("out"); it != a.flags.end()) {
    atomic_write(it->second, csv);
    std::cout << "wrote " << it->second << "\n";
  }
  return any_inconclusive ? 3 : 0;
}

// Conjecture probes: coarse, qualitative sweeps; excluded from acceptance.
int cmd_conjecture(Args a) {
  const GroundState& gs = shared_ground_state();
  int which = static_cast<int>(to_num(a.flags.at("conjecture"), "conjecture"));
  std::map<std::string, std::string> rest = a.kv;
  EvolveParams ep = solver_params(rest);
  RadialGrid grid = grid_from(rest);
  reject_unknown(rest, {});
  ep.sponge.strength = ep.sponge.strength == 0.0 ? 10.0 : ep.sponge.strength;
  double tol = to_num(a.flags.count("tol") ? a.flags.at("tol") : "0.02", "tol");
  std::string report;

  if (which == 1) {
    // gamma_0(lambda): negative-phase blow-up threshold near the soliton
    report = "conjecture 1 probe: gamma_0(lambda) with gamma_0 -> 0 as lambda -> 1\n";
    report += "lambda,gamma_scatter,gamma_blowup\n";
    double prev = 1e9;
    bool shrinking = true;
    for (double lam : {0.90, 0.95, 0.98}) {
      auto res = find_threshold(QProfile{lam, 0.0}, "gamma", {-0.6, 0.0}, tol, ep, grid, gs);
      double width = std::fabs(0.5 * (res.lo + res.hi));
      shrinking = shrinking && width < prev;
      prev = width;
      report += fmt12(lam) + "," + fmt12(std::min(res.lo, res.hi)) + "," +
                fmt12(std::max(res.lo, res.hi)) + "\n";
    }
    report += std::string("gamma_0 shrinks toward 0 as lambda -> 1: ") +
              (shrinking ? "yes" : "no") + "\n";
  } else if (which == 3 || which == 4) {
    report = "conjecture " + std::to_string(which) +
             " probe: real-data thresholds vs the invariant-norm crossing\n";
    report += "family,p_scatter,p_blowup,p_half\n";
    std::vector<std::pair<Profile, std::pair<double, double>>> cases = {
        {Gaussian{1, 1, 0}, {1.9, 2.3}},
        {SuperGaussian{1, 1, 0}, {1.8, 2.2}},
    };
    for (auto& [prof, br] : cases) {
      auto res = find_threshold(prof, "p", br, tol, ep, grid, gs);
      auto curves = criterion_curves(prof, "p", 2.0 * br.second, gs);
      report += family_name(prof) + "," + fmt12(res.lo) + "," + fmt12(res.hi) + "," +
                fmt12(curves.p_hhalf) + "\n";
    }
    report += "monotone profiles should bracket the crossing; oscillatory data need not\n";
  } else {
    throw UsageError("conjecture must be 1, 3 or 4");
  }

  std::string path = a.flags.count("out") ? a.flags.at("out") : "conjecture_report.txt";
  atomic_write(path, report);
  std::cout << report << "wrote " << path << "\n";
  return 0;
}

int cmd_table(Args a, const std::vector<std::string>& positional) {
  if (positional.empty()) throw UsageError("table needs an id, e.g. table T1:Lgauss");
  std::string id = positional.front();
  auto ids = table_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw UsageError("unknown table id: " + id);
  std::string data = a.flags.count("data") ? a.flags.at("data") : default_reference_path();
  auto entries = generate_table(id, shared_ground_state(), data);
  std::string csv = table_csv(entries);
  std::cout << csv;
  if (auto it = a.flags.find("out"); it != a.flags.end()) {
    atomic_write(it->second, csv);
    std::cout << "wrote " << it->second << "\n";
  }
  return 0;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      std::ifstream in(args[++i]);
      if (!in) throw UsageError("cannot open config: " + args[i]);
      std::string tok;
      while (in >> tok) {
        if (tok[0] == '#') {
          std::string rest;
          std::getline(in, rest);
          continue;
        }
        out.push_back(tok);
      }
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

constexpr const char* kUsage =
    "usage: nlscollapse <ground|diag|criteria|simulate|scan|table> [args]\n"
    "  ground   [tol=1e-8 rmax=25 n=10000] [--csv path]\n"
    "  diag     family=... p=... | --field data.csv [--json]\n"
    "  criteria family=... p=... [--delta d] [--R r] [--csv path]\n"
    "  simulate family=... p=... [t_max= dt0= rmax= n= sponge_strength= ...] [--out prefix]\n"
    "  scan     --family f [--fix k=v[,v...]] --vary p --bracket lo:hi [--tol t]\n"
    "           [--workers n] [--out path] | --conjecture 1|3|4\n"
    "  table    <id> [--out path] [--data path]   ids: ";

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    auto expanded = expand_config(args);
    if (expanded.empty()) {
      std::cerr << kUsage;
      for (const auto& id : table_ids()) std::cerr << id << " ";
      std::cerr << "\n";
      return 1;
    }
    std::string cmd = expanded[0];
    std::vector<std::string> rest(expanded.begin() + 1, expanded.end());
    std::vector<std::string> positional;
    if (cmd == "table" && !rest.empty() && rest[0].rfind("--", 0) != 0) {
      positional.push_back(rest[0]);
      rest.erase(rest.begin());
    }
    Args a = parse_args(rest);

    if (cmd == "ground") return cmd_ground(std::move(a));
    if (cmd == "diag") return cmd_diag(std::move(a));
    if (cmd == "criteria") return cmd_criteria(std::move(a));
    if (cmd == "simulate") return cmd_simulate(std::move(a));
    if (cmd == "scan") {
      if (a.flags.count("conjecture")) return cmd_conjecture(std::move(a));
      return cmd_scan(std::move(a));
    }
    if (cmd == "table") return cmd_table(std::move(a), positional);
    throw UsageError("unknown subcommand: " + cmd);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << kUsage << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nls
