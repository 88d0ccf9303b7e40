#include "nls/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>

namespace nls {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
const double kGamma34 = std::tgamma(0.75);
const double kPi32 = std::pow(kPi, 1.5);

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw DomainError(std::string("profile: ") + what + " must be positive");
}

}  // namespace

OscillatoryHelpers oscillatory_helpers(double beta, double gamma) {
  OscillatoryHelpers h;
  double b2 = beta * beta, g2 = gamma * gamma;
  double eb = std::exp(-b2 / 2.0);
  h.m = 1.0 + (1.0 - b2) * eb;
  h.a = 3.0 * (1.0 + g2) + b2 + (3.0 * (1.0 + g2) - b2 * (1.0 + 6.0 * g2) + b2 * b2 * g2) * eb;
  h.b = (3.0 + (1.0 - 2.0 * b2) * std::exp(-b2) + 2.0 * (2.0 - b2) * std::exp(-b2 / 4.0)) /
        (16.0 * kSqrt2);
  h.v = 3.0 + (3.0 - 6.0 * b2 + b2 * b2) * eb;
  return h;
}

std::string family_name(const Profile& profile) {
  return std::visit(Overload{[](const QProfile&) { return std::string("qprofile"); },
                             [](const Gaussian&) { return std::string("gaussian"); },
                             [](const SuperGaussian&) { return std::string("supergaussian"); },
                             [](const OffCentered&) { return std::string("offcentered"); },
                             [](const Oscillatory&) { return std::string("oscillatory"); }},
                    profile);
}

double quadratic_phase(const Profile& profile) {
  return std::visit([](const auto& f) { return f.gamma; }, profile);
}

double core_width(const Profile& profile) {
  return std::visit(
      Overload{[](const QProfile& f) { return 1.0 / f.lambda; },
               [](const Gaussian& f) { return 1.0 / std::sqrt(f.alpha); },
               [](const SuperGaussian& f) { return std::pow(f.alpha, -0.25); },
               [](const OffCentered& f) { return 1.0 / std::sqrt(f.alpha); },
               [](const Oscillatory&) { return 1.0; }},
      profile);
}

RadialField sample(const Profile& profile, const GroundState& ground, const RadialGrid& grid) {
  std::visit(Overload{[](const QProfile& f) {
                        require_positive(f.lambda, "lambda");
                      },
                      [](const Gaussian& f) {
                        require_positive(f.p, "p");
                        require_positive(f.alpha, "alpha");
                      },
                      [](const SuperGaussian& f) {
                        require_positive(f.p, "p");
                        require_positive(f.alpha, "alpha");
                      },
                      [](const OffCentered& f) {
                        require_positive(f.p, "p");
                        require_positive(f.alpha, "alpha");
                      },
                      [](const Oscillatory& f) {
                        require_positive(f.p, "p");
                        if (f.beta < 0.0) throw DomainError("profile: beta must be nonnegative");
                      }},
             profile);

  double beta = 0.0;
  if (const auto* osc = std::get_if<Oscillatory>(&profile)) beta = osc->beta;
  double limit = core_width(profile) / 20.0;
  if (beta > 0.0) limit = std::min(limit, 1.0 / (10.0 * beta));
  if (grid.dr > limit)
    throw DomainError("sample: grid under-resolves the profile (need dr <= " +
                      std::to_string(limit) + ")");

  RadialField field;
  field.grid = grid;
  field.values.resize(grid.points());
  double gamma = quadratic_phase(profile);
  for (std::size_t k = 0; k <= grid.n; ++k) {
    double r = grid.r(k);
    double amp = std::visit(
        Overload{[&](const QProfile& f) {
                   return std::pow(f.lambda, 1.5) * ground.value_at(f.lambda * r);
                 },
                 [&](const Gaussian& f) { return f.p * std::exp(-f.alpha * r * r / 2.0); },
                 [&](const SuperGaussian& f) {
                   return f.p * std::exp(-f.alpha * r * r * r * r / 2.0);
                 },
                 [&](const OffCentered& f) { return f.p * r * r * std::exp(-f.alpha * r * r); },
                 [&](const Oscillatory& f) {
                   return f.p * std::cos(f.beta * r) * std::exp(-r * r);
                 }},
        profile);
    field.values[k] = std::polar(1.0, gamma * r * r) * amp;
  }
  return field;
}

namespace {

// Fill the hhalf field by quadrature on an internally chosen grid.
double hhalf_by_quadrature(const Profile& profile, const GroundState& ground) {
  double width = core_width(profile);
  double beta = 0.0;
  if (const auto* osc = std::get_if<Oscillatory>(&profile)) beta = osc->beta;
  double dr_target = std::min(width / 40.0, beta > 0.0 ? 1.0 / (20.0 * beta) : width);
  double r_max = std::max(16.0 * width, 16.0);
  if (std::holds_alternative<QProfile>(profile)) r_max = std::max(r_max, 30.0 * width);
  std::size_t n = 1;
  while (static_cast<double>(n) < r_max / dr_target || n < 2048) n <<= 1;
  RadialField f = sample(profile, ground, make_grid(r_max, n));
  return hhalf_norm_sq(radial_fourier(f));
}

}  // namespace

ProfileDiagnostics closed_form_diagnostics(const Profile& profile, const GroundState& ground,
                                           bool with_hhalf) {
  ProfileDiagnostics out;
  Diagnostics& d = out.d;
  d.trusted = true;
  d.phase_split = true;

  std::visit(
      Overload{
          [&](const QProfile& f) {
            double l2 = f.lambda * f.lambda, l3 = l2 * f.lambda;
            double tg2 = (4.0 / 3.0) * f.gamma * f.gamma * ground.var / ground.mass_sq;
            d.mass = ground.mass_sq;
            d.variance = ground.var / l2;
            d.variance_rate = 8.0 * f.gamma * ground.var / l2;
            d.e_real = ground.energy * (3.0 * l2 - 2.0 * l3);
            d.e_phase = ground.energy * 3.0 * tg2 / l2;
            d.energy = d.e_real + d.e_phase;
            d.grad_sq = ground.grad_sq * (l2 + tg2 / l2);
          },
          [&](const Gaussian& f) {
            double s = 1.0 + 4.0 * f.gamma * f.gamma / (f.alpha * f.alpha);
            double p2 = f.p * f.p;
            d.mass = kPi32 * p2 / std::pow(f.alpha, 1.5);
            d.grad_sq = 1.5 * kPi32 * p2 / std::sqrt(f.alpha) * s;
            d.energy = kPi32 * p2 / (4.0 * std::sqrt(f.alpha)) *
                       (3.0 * s - p2 / (2.0 * kSqrt2 * f.alpha));
            d.variance = 1.5 * kPi32 * p2 / std::pow(f.alpha, 2.5);
            d.variance_rate = 12.0 * f.gamma * kPi32 * p2 / std::pow(f.alpha, 2.5);
            if (with_hhalf) {
              d.hhalf_sq = 2.0 * kPi * p2 / f.alpha * std::sqrt(s);
              d.hhalf_valid = true;
            }
          },
          [&](const SuperGaussian& f) {
            double s = 5.0 + 4.0 * f.gamma * f.gamma / f.alpha;
            double p2 = f.p * f.p;
            d.mass = kPi * p2 * kGamma34 / std::pow(f.alpha, 0.75);
            d.grad_sq = kPi * kPi * p2 / (2.0 * kSqrt2 * std::pow(f.alpha, 0.25) * kGamma34) * s;
            d.energy = kPi * p2 / (4.0 * kSqrt2 * std::pow(f.alpha, 0.25) * kGamma34) *
                       (kPi * s - kGamma34 * kGamma34 * p2 / (std::pow(2.0, 0.25) * std::sqrt(f.alpha)));
            d.variance = kPi * kPi * p2 / (2.0 * kSqrt2 * std::pow(f.alpha, 1.25) * kGamma34);
            d.variance_rate = 2.0 * kSqrt2 * kPi * kPi * p2 * f.gamma /
                              (std::pow(f.alpha, 1.25) * kGamma34);
          },
          [&](const OffCentered& f) {
            double s = 11.0 + 35.0 * f.gamma * f.gamma / (f.alpha * f.alpha);
            double p2 = f.p * f.p;
            d.mass = 15.0 * kPi32 * p2 / (32.0 * kSqrt2 * std::pow(f.alpha, 3.5));
            d.grad_sq = 3.0 * kPi32 * p2 / (32.0 * kSqrt2 * std::pow(f.alpha, 2.5)) * s;
            d.energy = 3.0 * kPi32 * p2 / (64.0 * kSqrt2 * std::pow(f.alpha, 2.5)) *
                       (s - 315.0 * p2 / (1024.0 * kSqrt2 * std::pow(f.alpha, 3.0)));
            d.variance = 105.0 * kPi32 * p2 / (128.0 * kSqrt2 * std::pow(f.alpha, 4.5));
            d.variance_rate = 105.0 * f.gamma * kPi32 * p2 / (16.0 * kSqrt2 * std::pow(f.alpha, 4.5));
            if (with_hhalf) {
              double g2a2 = f.gamma * f.gamma / (f.alpha * f.alpha);
              d.hhalf_sq = 3.0 * kPi * p2 / (4.0 * std::pow(f.alpha, 3.0)) *
                           (1.0 + 2.0 * g2a2) / std::sqrt(1.0 + g2a2);
              d.hhalf_valid = true;
            }
          },
          [&](const Oscillatory& f) {
            auto h = oscillatory_helpers(f.beta, f.gamma);
            double p2 = f.p * f.p;
            double k = kPi32 * p2 / (4.0 * kSqrt2);
            d.mass = k * h.m;
            d.grad_sq = k * h.a;
            d.energy = 0.5 * k * (h.a - p2 * h.b);
            d.variance = 0.25 * k * h.v;
            d.variance_rate = 2.0 * f.gamma * k * h.v;
          }},
      profile);

  // The quadratic-phase identity V_t(0)^2 = 32 V(0) E^gamma pins the split.
  d.e_phase = d.variance_rate * d.variance_rate / (32.0 * d.variance);
  d.e_real = d.energy - d.e_phase;
  d.l4_fourth = 2.0 * d.grad_sq - 4.0 * d.energy;
  d.eta = std::sqrt(d.mass * d.grad_sq / (ground.mass_sq * ground.grad_sq));
  d.me_ratio = d.mass * d.energy / (ground.mass_sq * ground.energy);

  if (with_hhalf && !d.hhalf_valid) {
    d.hhalf_sq = hhalf_by_quadrature(profile, ground);
    d.hhalf_valid = true;
    out.from_quadrature.push_back("hhalf_sq");
  }
  return out;
}

Profile parse_profile(const std::map<std::string, std::string>& kv) {
  auto it = kv.find("family");
  if (it == kv.end()) throw DomainError("profile spec: missing family=");
  std::string fam = it->second;
  auto num = [&kv](const std::string& key, double fallback, bool required = false) {
    auto f = kv.find(key);
    if (f == kv.end()) {
      if (required) throw DomainError("profile spec: missing " + key + "=");
      return fallback;
    }
    char* end = nullptr;
    double v = std::strtod(f->second.c_str(), &end);
    if (end == f->second.c_str() || *end != '\0')
      throw DomainError("profile spec: bad number for " + key);
    return v;
  };
  static const std::map<std::string, std::vector<std::string>> allowed = {
      {"qprofile", {"family", "lambda", "gamma"}},
      {"gaussian", {"family", "p", "alpha", "gamma"}},
      {"supergaussian", {"family", "p", "alpha", "gamma"}},
      {"offcentered", {"family", "p", "alpha", "gamma"}},
      {"oscillatory", {"family", "p", "beta", "gamma"}}};
  auto fa = allowed.find(fam);
  if (fa == allowed.end()) throw DomainError("profile spec: unknown family " + fam);
  for (const auto& [key, value] : kv) {
    (void)value;
    if (std::find(fa->second.begin(), fa->second.end(), key) == fa->second.end())
      throw DomainError("profile spec: unknown key " + key + " for family " + fam);
  }
  Profile out;
  if (fam == "qprofile")
    out = QProfile{num("lambda", 1.0, true), num("gamma", 0.0)};
  else if (fam == "gaussian")
    out = Gaussian{num("p", 1.0, true), num("alpha", 1.0), num("gamma", 0.0)};
  else if (fam == "supergaussian")
    out = SuperGaussian{num("p", 1.0, true), num("alpha", 1.0), num("gamma", 0.0)};
  else if (fam == "offcentered")
    out = OffCentered{num("p", 1.0, true), num("alpha", 1.0), num("gamma", 0.0)};
  else
    out = Oscillatory{num("p", 1.0, true), num("beta", 0.0), num("gamma", 0.0)};
  std::visit(Overload{[](const QProfile& f) { require_positive(f.lambda, "lambda"); },
                      [](const Gaussian& f) {
                        require_positive(f.p, "p");
                        require_positive(f.alpha, "alpha");
                      },
                      [](const SuperGaussian& f) {
                        require_positive(f.p, "p");
                        require_positive(f.alpha, "alpha");
                      },
                      [](const OffCentered& f) {
                        require_positive(f.p, "p");
                        require_positive(f.alpha, "alpha");
                      },
                      [](const Oscillatory& f) {
                        require_positive(f.p, "p");
                        if (f.beta < 0.0)
                          throw DomainError("profile: beta must be nonnegative");
                      }},
             out);
  return out;
}

namespace {
std::string fmt_kv(const char* key, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " %s=%.12g", key, v);
  return buf;
}
}  // namespace

std::string format_profile(const Profile& profile) {
  std::string s = "family=" + family_name(profile);
  std::visit(Overload{[&](const QProfile& f) {
                        s += fmt_kv("lambda", f.lambda) + fmt_kv("gamma", f.gamma);
                      },
                      [&](const Gaussian& f) {
                        s += fmt_kv("p", f.p) + fmt_kv("alpha", f.alpha) + fmt_kv("gamma", f.gamma);
                      },
                      [&](const SuperGaussian& f) {
                        s += fmt_kv("p", f.p) + fmt_kv("alpha", f.alpha) + fmt_kv("gamma", f.gamma);
                      },
                      [&](const OffCentered& f) {
                        s += fmt_kv("p", f.p) + fmt_kv("alpha", f.alpha) + fmt_kv("gamma", f.gamma);
                      },
                      [&](const Oscillatory& f) {
                        s += fmt_kv("p", f.p) + fmt_kv("beta", f.beta) + fmt_kv("gamma", f.gamma);
                      }},
             profile);
  return s;
}

double get_param(const Profile& profile, const std::string& name) {
  if (name == "gamma") return quadratic_phase(profile);
  double out = 0.0;
  bool found = false;
  std::visit(Overload{[&](const QProfile& f) {
                        if (name == "lambda") out = f.lambda, found = true;
                      },
                      [&](const Gaussian& f) {
                        if (name == "p") out = f.p, found = true;
                        if (name == "alpha") out = f.alpha, found = true;
                      },
                      [&](const SuperGaussian& f) {
                        if (name == "p") out = f.p, found = true;
                        if (name == "alpha") out = f.alpha, found = true;
                      },
                      [&](const OffCentered& f) {
                        if (name == "p") out = f.p, found = true;
                        if (name == "alpha") out = f.alpha, found = true;
                      },
                      [&](const Oscillatory& f) {
                        if (name == "p") out = f.p, found = true;
                        if (name == "beta") out = f.beta, found = true;
                      }},
             profile);
  if (!found) throw DomainError("profile: no parameter named " + name);
  return out;
}

Profile with_param(const Profile& profile, const std::string& name, double value) {
  Profile out = profile;
  bool ok = false;
  std::visit(Overload{[&](QProfile& f) {
                        if (name == "lambda") f.lambda = value, ok = true;
                        if (name == "gamma") f.gamma = value, ok = true;
                      },
                      [&](Gaussian& f) {
                        if (name == "p") f.p = value, ok = true;
                        if (name == "alpha") f.alpha = value, ok = true;
                        if (name == "gamma") f.gamma = value, ok = true;
                      },
                      [&](SuperGaussian& f) {
                        if (name == "p") f.p = value, ok = true;
                        if (name == "alpha") f.alpha = value, ok = true;
                        if (name == "gamma") f.gamma = value, ok = true;
                      },
                      [&](OffCentered& f) {
                        if (name == "p") f.p = value, ok = true;
                        if (name == "alpha") f.alpha = value, ok = true;
                        if (name == "gamma") f.gamma = value, ok = true;
                      },
                      [&](Oscillatory& f) {
                        if (name == "p") f.p = value, ok = true;
                        if (name == "beta") f.beta = value, ok = true;
                        if (name == "gamma") f.gamma = value, ok = true;
                      }},
             out);
  if (!ok) throw DomainError("profile: no parameter named " + name);
  return out;
}

}  // namespace nls
