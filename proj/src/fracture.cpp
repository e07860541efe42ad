#include "latfrak/fracture.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <fmt/format.h>

#include "latfrak/error.hpp"
#include "latfrak/kernel.hpp"
#include "latfrak/parallel.hpp"
#include "latfrak/wienerhopf.hpp"

namespace latfrak {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOnsetKappa = 1e-3;

struct PointIntegral {
  double value = 0.0;
  double quadrature_error = 0.0;
  double tail = 0.0;
  double jump_density = 0.0;
  std::vector<std::string> warnings;
};

PointIntegral integral_at(const LatticeParams& p, double kappa, const ProfileSpec& spec) {
  ProfileSpec s = spec;
  s.threads = 1;
  const PhaseProfile prof = arg_profile(p.with_eps(kappa), s);
  const PhaseIntegral I = phase_integral(prof);
  PointIntegral out;
  out.value = I.value;
  out.quadrature_error = I.quadrature_error;
  out.tail = I.tail;
  out.jump_density = jump_density(prof);
  out.warnings = prof.warnings;
  out.warnings.insert(out.warnings.end(), I.warnings.begin(), I.warnings.end());
  return out;
}

std::mutex g_onset_mu;
std::map<std::tuple<double, double, double>, double> g_onset_cache;

}  // namespace

double rayleigh_speed_limit() { return std::sqrt(3.0) / 2.0; }

LatticeParams contrast_params(const LatticeParams& t, double alpha, double V) {
  if (!(alpha > 0.0)) throw ParameterError(fmt::format("alpha must be positive, got {}", alpha));
  return LatticeParams::from_stiffness(t.mu1, t.mu1 / alpha, V, t.eps, t.m);
}

double instability_onset(const LatticeParams& p, const FractureOptions& opt) {
  const auto key = std::make_tuple(p.m, p.mu1, p.mu2);
  {
    std::lock_guard<std::mutex> lock(g_onset_mu);
    if (auto it = g_onset_cache.find(key); it != g_onset_cache.end()) return it->second;
  }
  const double cr = rayleigh_speed(p);
  double best = -1.0, where = 0.10;
  for (int k = 0; k <= 44; ++k) {
    const double frac = 0.10 + 0.02 * k;
    try {
      const double g = std::exp(2.0 * integral_at(p.with_speed(frac * cr), kOnsetKappa,
                                                  opt.profile).value / kPi);
      if (g > best) {
        best = g;
        where = frac;
      }
    } catch (const Error&) {
      // A speed whose profile cannot be resolved does not define the maximum.
    }
  }
  std::lock_guard<std::mutex> lock(g_onset_mu);
  g_onset_cache[key] = where;
  return where;
}

FractureResult energy_ratio(const LatticeParams& p, const FractureOptions& opt) {
  const CheckedParams cp = validate_subrayleigh(p);
  if (opt.schedule.values.empty()) throw ParameterError("empty regularization schedule");
  FractureResult r;
  r.alpha = p.alpha;
  r.V = p.V;
  r.V_over_CR = cp.v_over_cr;
  r.V_over_CR0 = p.V / rayleigh_speed_limit();
  r.eps_schedule = opt.schedule.values;
  r.eps_final = opt.schedule.values.back();

  PointIntegral last;
  for (double kappa : opt.schedule.values) {
    last = integral_at(p, kappa, opt.profile);
    r.integrals.push_back(last.value);
  }
  r.quadrature_error = last.quadrature_error;
  r.tail_estimate = last.tail;
  r.jump_density = last.jump_density;
  r.warnings = last.warnings;

  // First-order Richardson on consecutive pairs (the schedule is geometric).
  const auto& I = r.integrals;
  const auto& e = r.eps_schedule;
  const std::size_t n = I.size();
  double value = I.back();
  if (n >= 3) {
    auto rich = [&](std::size_t k) {
      const double q = e[k] / e[k + 1];
      return (q * I[k + 1] - I[k]) / (q - 1.0);
    };
    const double r1 = rich(n - 2), r0 = rich(n - 3);
    r.extrapolation_change = std::abs(std::exp(2.0 * (r1 - r0) / kPi) - 1.0);
    r.extrapolated = r.extrapolation_change < opt.extrapolation_tol;
    value = r.extrapolated ? r1 : I.back();
  }
  r.phase_integral = value;
  r.G0_over_G = std::exp(2.0 * value / kPi);

  try {
    r.L0 = asymptotic_constants(p).L0;
    r.K1_over_sqrtG0 = p.mu2 * std::sqrt(6.0 / r.L0) * std::exp(-value / kPi);
  } catch (const DegenerateError& ex) {
    r.warnings.push_back(ex.what());
    r.K1_over_sqrtG0 = std::nan("");
  }

  bool unstable = r.jump_density > 3.0 || !r.extrapolated;
  if (opt.detect_onset) {
    r.onset_V_over_CR = instability_onset(p, opt);
    unstable = unstable || r.V_over_CR < r.onset_V_over_CR;
  }
  r.unstable_flag = unstable;
  return r;
}

FractureResult stress_intensity(const LatticeParams& p, const FractureOptions& opt) {
  return energy_ratio(p, opt);
}

double stress_intensity_from_factorization(const LatticeParams& p, const PhaseProfile& profile) {
  const Factorization f(profile, p);
  // |S+ sqrt(-i xi)| for unit load; averaged over +/- xi and extrapolated.
  auto value = [&](double x) {
    double acc = 0.0;
    for (double sgn : {-1.0, 1.0}) {
      const double xi = sgn * x;
      const cplx lp = std::exp(f.log_plus_real(xi));
      const double e = profile.eps_at(x);
      const cplx s_plus = 1.0 / (lp * cplx(e, -xi));
      acc += 0.5 * std::log(std::abs(s_plus * std::sqrt(cplx(0.0, -xi))));
    }
    return acc;
  };
  const double d = 1e-4;
  const double lim = 2.0 * value(d) - value(2.0 * d);
  return p.mu2 * std::sqrt(6.0) * std::exp(lim);
}

Traction traction_ahead(double eta, const FractureResult& r, const LatticeParams& p, double G0) {
  if (!(eta > 0.0)) throw DomainError(fmt::format("eta must be positive, got {}", eta));
  if (!(G0 >= 0.0)) throw DomainError(fmt::format("G0 must be non-negative, got {}", G0));
  Traction t;
  t.eta = eta;
  t.S = std::sqrt(G0 / (r.L0 * kPi * eta)) * std::exp(-r.phase_integral / kPi);
  t.sigma = p.mu2 * std::sqrt(3.0) * t.S;
  return t;
}

Traction traction_ahead(double eta, const LatticeParams& p, double G0, const FractureOptions& opt) {
  if (!(eta > 0.0)) throw DomainError(fmt::format("eta must be positive, got {}", eta));
  FractureOptions o = opt;
  o.detect_onset = false;
  return traction_ahead(eta, energy_ratio(p, o), p, G0);
}

std::vector<double> SpeedGrid::fractions() const {
  if (n_speeds < 1 || !(lo > 0.0) || !(hi <= 1.0) || !(lo <= hi))
    throw ParameterError("invalid speed grid");
  std::vector<double> f;
  for (int k = 0; k < n_speeds; ++k)
    f.push_back(n_speeds == 1 ? lo : lo + (hi - lo) * k / double(n_speeds - 1));
  return f;
}

std::vector<SweepRow> sweep(const std::vector<double>& alphas, const SpeedGrid& grid,
                            const LatticeParams& t, const FractureOptions& opt, unsigned threads) {
  const std::vector<double> fr = grid.fractions();
  std::vector<SweepRow> rows;
  for (double a : alphas) {
    const double cr = rayleigh_speed(contrast_params(t, a, 0.0));
    for (double f : fr) rows.push_back({a, f * cr, std::nullopt, {}});
  }
  // Onset scans first, one task per contrast, so that point tasks only read the cache.
  if (opt.detect_onset)
    parallel_for(
        alphas.size(),
        [&](std::size_t i) {
          try {
            instability_onset(contrast_params(t, alphas[i], 0.0), opt);
          } catch (const Error&) {
          }
        },
        threads);
  parallel_for(
      rows.size(),
      [&](std::size_t i) {
        SweepRow& row = rows[i];
        try {
          row.result = energy_ratio(contrast_params(t, row.alpha, row.V), opt);
        } catch (const Error& ex) {
          row.error = fmt::format("{}: {}", ex.kind(), ex.what());
        }
      },
      threads);
  return rows;
}

}  // namespace latfrak
