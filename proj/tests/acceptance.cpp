// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "latfrak/dispersion.hpp"
#include "latfrak/error.hpp"
#include "latfrak/fracture.hpp"
#include "latfrak/kernel.hpp"
#include "latfrak/phase.hpp"
#include "latfrak/wienerhopf.hpp"

using namespace latfrak;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& note) {
    passed = passed && ok;
    notes.push_back((ok ? "" : "FAILED ") + note);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

LatticeParams at_fraction(double alpha, double frac, double eps = 1e-3) {
  LatticeParams p = LatticeParams::from_contrast(alpha, 0.0, eps);
  return p.with_speed(frac * rayleigh_speed(p));
}

LatticeParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  LatticeParams p = LatticeParams::from_contrast(std::pow(10.0, -1.3 + 3.3 * U(rng)), 0.0,
                                                 std::pow(10.0, -6.0 + 7.0 * U(rng)));
  return p.with_speed((0.01 + 0.98 * U(rng)) * rayleigh_speed(p));
}

// Regularization vanishing at the origin. The default curvature refinement
// keeps ln L accurately interpolated for the factorization.
ProfileSpec factorization_profile() {
  ProfileSpec s;
  s.regularization = Regularization::vanishing;
  return s;
}

Outcome rayleigh_constants() {
  Outcome o;
  const double g_inf = g_bound(1e9);
  o.check(std::abs(g_inf - 0.375) < 1e-8, fmt::format("g(1e9)={:.12f}", g_inf));
  const double g4 = g_bound(0.25), g4_ref = 0.375 * (1.0 - std::sqrt(3.0) / 3.0);
  o.check(std::abs(g4 - g4_ref) < 1e-15, fmt::format("g(1/4)-ref={:.1e}", g4 - g4_ref));
  const double a = 1e-7, h = 1e-9;
  const double slope = (g_bound(a + h) - g_bound(a)) / h;
  o.check(std::abs(slope - 0.75) < 1e-3, fmt::format("dg/da(0+)={:.6f}", slope));
  const double cr0 = rayleigh_speed(LatticeParams::from_contrast(1e-12, 0.1, 1e-3));
  o.check(std::abs(cr0 - std::sqrt(3.0) / 2.0) < 1e-9, fmt::format("C_R(0)={:.10f}", cr0));
  return o;
}

Outcome branch_admissibility() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> X(-50.0, 50.0);
  double worst_mod = 0.0, worst_res = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const LatticeParams p = random_params(rng);
    const double xi = X(rng);
    const LambdaRoots r = eval_lambda(xi, p);
    worst_mod = std::max({worst_mod, std::abs(r.lam1), std::abs(r.lam2)});
    worst_res = std::max(
        {worst_res, biquadratic_residual(r.lam1, xi, p), biquadratic_residual(r.lam2, xi, p)});
  }
  const double dt = seconds_since(t0);
  o.check(worst_mod <= 1.0 + 1e-12, fmt::format("max|Lambda|={:.15f}", worst_mod));
  o.check(worst_res < 1e-9, fmt::format("max residual={:.1e}", worst_res));
  o.check(dt < 10.0, fmt::format("{:.2f}s for 1e5 samples", dt));
  return o;
}

Outcome dual_kernel() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> X(-50.0, 50.0);
  double worst = 0.0, smallest = INFINITY;
  int n = 0;
  while (n < 1000) {
    const LatticeParams p = random_params(rng);
    const double xi = X(rng);
    const LambdaRoots r = eval_lambda(xi, p);
    if (r.on_spectrum1 || r.on_spectrum2) continue;
    const cplx a = eval_L_closed(xi, p).L, b = eval_L_matrix(xi, p);
    worst = std::max(worst, std::abs(a - b) / std::abs(a));
    smallest = std::min(smallest, std::abs(xi));
    ++n;
  }
  const double dt = seconds_since(t0);
  o.check(worst < 1e-9, fmt::format("max rel diff={:.1e} on {} samples, min |xi|={:.1e}", worst,
                                    n, smallest));
  o.check(dt < 10.0, fmt::format("{:.2f}s", dt));
  return o;
}

Outcome asymptotes() {
  Outcome o;
  // Origin: L ~ L0 / sqrt(eps^2 + xi^2) in the regime eps << xi << 1.
  double worst = 0.0;
  for (double alpha : {0.05, 0.2, 1.0, 10.0, 100.0})
    for (double f : {0.3, 0.8}) {
      const LatticeParams p = at_fraction(alpha, f, 1e-9);
      const double xi = 1e-4;
      const cplx L = eval_L_closed(xi, p).L;
      worst = std::max(worst, std::abs(L * std::hypot(p.eps, xi) / asymptotic_constants(p).L0 - 1.0));
    }
  o.check(worst < 1e-3, fmt::format("origin rel err={:.1e} (eps=1e-9)", worst));
  {
    const LatticeParams p = LatticeParams::from_contrast(1.0, 0.4504, 1e-3);
    const cplx L = eval_L_closed(1e-4, p).L;
    o.notes.push_back(fmt::format("info: at eps=1e-3 > xi the ratio is {:.4f}",
                                  std::abs(L * std::hypot(p.eps, 1e-4) / asymptotic_constants(p).L0)));
  }
  // Decay exponent of |L - 1| on [1e2, 1e4].
  {
    const LatticeParams p = LatticeParams::from_contrast(1.0, 0.4504, 1e-3);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double e = 2.0; e <= 4.0 + 1e-12; e += 0.005) {
      const double xi = std::pow(10.0, e);
      const double x = std::log(xi), y = std::log(std::abs(eval_L_closed(xi, p).L - 1.0));
      sx += x, sy += y, sxx += x * x, sxy += x * y, ++n;
    }
    const double slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    o.check(std::abs(slope - 2.0) <= 0.1, fmt::format("decay exponent={:.4f}", slope));
  }
  // Large regularization: leading term with O((eps^2 + xi^2 V^2)^-2) remainder.
  {
    const LatticeParams p = LatticeParams::from_contrast(1.0, 0.3941, 10.0);
    double worst_scaled = 0.0, worst_rel = 0.0;
    for (double t = -399.99; t < 400.0; t += 0.0937) {
      const double xi = t * kPi;
      const KernelSample s = eval_L_closed(xi, p);
      const cplx Y = y_param(xi, p.eps, p);
      const cplx lead = 1.0 + Y * (2.0 + std::cos(xi / 2.0)) / (3.0 * s.z1 * s.z2);
      const double w = p.eps * p.eps + xi * xi * p.V * p.V;
      worst_scaled = std::max(worst_scaled, std::abs(s.L - lead) * w * w);
      worst_rel = std::max(worst_rel, std::abs(s.L - lead) / std::abs(s.L));
    }
    o.check(worst_scaled < 100.0,
            fmt::format("large-eps |L-lead|*(eps^2+xi^2V^2)^2 <= {:.2f}, max rel {:.1e}",
                        worst_scaled, worst_rel));
  }
  return o;
}

Outcome properties() {
  Outcome o;
  const auto t0 = Clock::now();
  int bad = 0;
  double min_L0 = INFINITY;
  for (int i = 0; i < 50; ++i)
    for (int j = 1; j <= 50; ++j) {
      const double a = std::pow(10.0, std::log10(0.05) + i * (std::log10(100.0) - std::log10(0.05)) / 49.0);
      const AsymptoticConstants k = asymptotic_constants(at_fraction(a, j / 50.5));
      auto neg_real = [](cplx d) {
        return d.real() <= 0.0 && std::abs(d.imag()) <= 1e-14 * std::abs(d);
      };
      if (!(k.L0 > 0.0) || neg_real(k.d1) || neg_real(k.d2)) ++bad;
      min_L0 = std::min(min_L0, k.L0);
    }
  o.check(bad == 0, fmt::format("50x50 grid: {} violations, min L0={:.4f}", bad, min_L0));

  const std::vector<std::pair<double, double>> pairs{
      {1.0, 0.4504}, {1.0, 0.21395}, {0.1, 0.79976}, {100.0, 0.0}, {0.05, 0.0}};
  int nonzero = 0;
  std::string indices;
  for (auto [a, V] : pairs) {
    LatticeParams p = LatticeParams::from_contrast(a, V, 1e-3);
    if (V == 0.0) p = p.with_speed(0.6 * rayleigh_speed(p));
    for (double e : {1e-1, 1e-2, 1e-3}) {
      int idx = -999;
      try {
        idx = winding_index(arg_profile(p.with_eps(e)));
      } catch (const Error& ex) {
        indices += fmt::format(" [{}]", ex.what());
      }
      if (idx != 0) ++nonzero;
      indices += fmt::format("{}", idx);
    }
    indices += " ";
  }
  o.check(nonzero == 0, fmt::format("Ind over 5 pairs x 3 eps: {}", indices));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> X(0.0, 60.0);
  double odd = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const LatticeParams p = random_params(rng);
    const double xi = X(rng);
    odd = std::max(odd, std::abs(std::arg(eval_L_closed(xi, p).L) + std::arg(eval_L_closed(-xi, p).L)));
  }
  ProfileSpec s;
  const LatticeParams p = LatticeParams::from_contrast(1.0, 0.4504, 1e-3);
  const PhaseProfile a = arg_profile(p, s);
  s.mirror = true;
  const PhaseProfile b = arg_profile(p, s);
  for (std::size_t k = 0; k < a.grid.size(); ++k)
    odd = std::max(odd, std::abs(a.arg_values[k] + b.arg_values[k]));
  o.check(odd < 1e-8, fmt::format("arg L oddness defect={:.1e}", odd));
  const double dt = seconds_since(t0);
  o.check(dt < 120.0, fmt::format("{:.1f}s", dt));
  return o;
}

Outcome pole_activity() {
  Outcome o;
  const LatticeParams p = LatticeParams::from_contrast(1.0, 0.4504, 1e-3);
  auto intervals = [&](Branch b) {
    std::vector<double> edges;
    const int n = 80000;
    bool prev = false;
    for (int k = 0; k <= n; ++k) {
      const double t = 4.0 * k / n;
      const bool a = pole_active(b, t * kPi, p, ActivityRule::spectrum).active;
      if (a != prev) edges.push_back(a ? t : 4.0 * (k - 1) / n);
      prev = a;
    }
    return edges;
  };
  const std::map<Branch, std::vector<double>> expected{
      {Branch::D2, {0.6667, 1.3333, 2.6667, 3.3333}},
      {Branch::D3, {0.7614, 1.2386, 2.7614, 3.2386}}};
  for (const auto& [b, ref] : expected) {
    const auto got = intervals(b);
    bool ok = got.size() == ref.size();
    std::string txt;
    for (std::size_t k = 0; k < got.size(); ++k) {
      if (k < ref.size()) ok = ok && std::abs(got[k] - ref[k]) <= 1e-3;
      txt += fmt::format("{}{:.4f}", k % 2 ? "-" : " ", got[k]);
    }
    o.check(ok, fmt::format("{} active on xi/pi{}", to_string(b), txt));
  }
  return o;
}

Outcome jump_correspondence() {
  Outcome o;
  for (auto [V, radical_near] : {std::pair{0.4504, 1.0}, std::pair{0.21395, 3.4}}) {
    const LatticeParams p = LatticeParams::from_contrast(1.0, V, 1e-5);
    const PhaseProfile prof = arg_profile(p);
    const CrossingSet cs = crossings(p);
    const double cell = prof.base_step;
    auto nearest_jump = [&](double x) {
      double d = INFINITY;
      for (const Jump& j : prof.jumps) d = std::min(d, std::abs(j.xi - x));
      return d;
    };
    int singular = 0, paired = 0, tangential = 0;
    std::string missing;
    for (const Crossing& c : cs.items) {
      if (c.tangential) {
        ++tangential;
        continue;
      }
      if (c.kind != CrossingKind::root && c.kind != CrossingKind::pole) continue;
      ++singular;
      if (nearest_jump(c.xi_star) <= 2.0 * cell)
        ++paired;
      else
        missing += fmt::format(" {}@{:.4f}pi", to_string(c.branch), c.xi_star / kPi);
    }
    o.check(paired == singular,
            fmt::format("V={}: {}/{} root/pole crossings paired within 2 cells ({} tangential){}",
                        V, paired, singular, tangential, missing));
    // pi/2 jump from the change of the radical along the ray.
    bool found = false;
    for (double r : radical_transitions(p)) {
      if (std::abs(r / kPi - radical_near) > 0.1) continue;
      for (const Jump& j : prof.jumps)
        if (std::abs(j.xi - r) <= 2.0 * cell && std::abs(std::abs(j.magnitude) - kPi / 2.0) < 0.15) {
          found = true;
          o.notes.push_back(fmt::format("V={}: pi/2 jump at {:.4f}pi, magnitude {:.3f}pi", V,
                                        j.xi / kPi, j.magnitude / kPi));
        }
    }
    o.check(found, fmt::format("V={}: pi/2 jump near {}pi", V, radical_near));
    // Every detected jump has a source.
    int unexplained = 0;
    const auto rad = radical_transitions(p);
    for (const Jump& j : prof.jumps) {
      bool ok = false;
      for (const Crossing& c : cs.items) ok = ok || std::abs(c.xi_star - j.xi) <= 2.0 * cell;
      for (double r : rad) ok = ok || std::abs(r - j.xi) <= 2.0 * cell;
      if (!ok) ++unexplained;
    }
    o.notes.push_back(fmt::format("V={}: {} jumps, {} without a crossing or radical source", V,
                                  prof.jumps.size(), unexplained));
  }
  return o;
}

Outcome factorization() {
  Outcome o;
  const LatticeParams p = LatticeParams::from_contrast(1.0, 0.4504, 1e-3);
  const PhaseProfile prof = arg_profile(p, factorization_profile());
  const Factorization f(prof, p);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> X(-30.0, 30.0);
  double worst = 0.0;
  int n = 0;
  while (n < 100) {
    const double xi = X(rng);
    bool near = false;
    for (const Jump& j : prof.jumps) near = near || std::abs(std::abs(xi) - j.xi) < 10.0 * prof.base_step;
    if (near) continue;
    worst = std::max(worst, f.at(xi).residual);
    ++n;
  }
  o.check(worst < 1e-5, fmt::format("max |L+L- - L|/|L| = {:.1e} at {} points", worst, n));
  const double I = phase_integral(prof).value;
  const double target = std::sqrt(asymptotic_constants(p).L0) * std::exp(I / kPi);
  for (double xi : {1e-3, 1e-4}) {
    const cplx v = std::exp(f.log_plus_real(xi)) * std::sqrt(cplx(prof.eps_at(xi), -xi));
    const double err = std::abs(v / target - 1.0);
    o.check(err < 1e-2, fmt::format("L+ sqrt(eps - i xi) / (sqrt(L0) e^(I/pi)) at xi={}: rel err {:.1e}",
                                    xi, err));
  }
  return o;
}

struct SweepData {
  std::vector<double> alphas{0.05, 0.1, 0.2, 1.0, 100.0};
  std::vector<SweepRow> rows;
  double seconds = 0.0;

  std::vector<const SweepRow*> curve(double alpha) const {
    std::vector<const SweepRow*> c;
    for (const SweepRow& r : rows)
      if (r.alpha == alpha) c.push_back(&r);
    return c;
  }
};

const SweepData& sweep_data() {
  static const SweepData d = [] {
    SweepData s;
    const auto t0 = Clock::now();
    s.rows = sweep(s.alphas, SpeedGrid{}, LatticeParams::from_contrast(1.0, 0.0, 1e-3));
    s.seconds = seconds_since(t0);
    return s;
  }();
  return d;
}

double fraction(const SweepRow& r) { return r.result ? r.result->V_over_CR : NAN; }

Outcome energy() {
  Outcome o;
  const SweepData& d = sweep_data();
  int failed = 0;
  for (const SweepRow& r : d.rows) failed += r.result ? 0 : 1;
  o.check(failed == 0, fmt::format("{} sweep points, {} failed", d.rows.size(), failed));

  // Dual route: C^2 lim L-/L+ from the factorization against exp(-2 I / pi).
  double worst = 0.0;
  int spots = 0;
  for (auto [a, f] : std::vector<std::pair<double, double>>{{0.05, 0.6}, {0.05, 0.9}, {0.1, 0.7},
                                                            {0.2, 0.55}, {0.2, 0.85}, {1.0, 0.6},
                                                            {1.0, 0.8}, {1.0, 0.95}, {100.0, 0.5},
                                                            {100.0, 0.9}}) {
    const LatticeParams p = at_fraction(a, f);
    const PhaseProfile prof = arg_profile(p, factorization_profile());
    const double I = phase_integral(prof).value;
    const PointLoadSolution s = solve_point_load(p, prof, 1.0);
    worst = std::max(worst, std::abs(s.energy_release_limit() / std::exp(-2.0 * I / kPi) - 1.0));
    ++spots;
  }
  o.check(worst < 1e-2, fmt::format("G dual route: max rel diff {:.1e} over {} spots", worst, spots));

  for (double a : d.alphas) {
    const auto c = d.curve(a);
    const std::size_t n = c.size();
    bool mono = n >= 5;
    for (std::size_t k = n - 5; k + 1 < n && mono; ++k)
      mono = c[k]->result && c[k + 1]->result &&
             c[k + 1]->result->G0_over_G < c[k]->result->G0_over_G;
    double peak = 0.0;
    for (const SweepRow* r : c)
      if (r->result) peak = std::max(peak, r->result->G0_over_G);
    const double last = c.back()->result ? c.back()->result->G0_over_G : NAN;
    const bool small = last < 0.25 * peak;
    o.check(mono && small,
            fmt::format("alpha={}: last 5 decreasing={}, G0/G at V/C_R={:.2f} is {:.4f} (peak {:.4f})",
                        a, mono, fraction(*c.back()), last, peak));
  }

  // Crossing of the alpha = 0.2 and alpha = 1 curves, by linear interpolation
  // of the difference on the shared V/C_R grid.
  const auto c02 = d.curve(0.2), c1 = d.curve(1.0);
  std::vector<double> xs;
  for (std::size_t k = 0; k + 1 < c02.size(); ++k) {
    if (!c02[k]->result || !c02[k + 1]->result || !c1[k]->result || !c1[k + 1]->result) continue;
    if (c1[k]->result->unstable_flag || c02[k]->result->unstable_flag) continue;
    const double d0 = c02[k]->result->G0_over_G - c1[k]->result->G0_over_G;
    const double d1 = c02[k + 1]->result->G0_over_G - c1[k + 1]->result->G0_over_G;
    if (d0 == 0.0 || (d0 < 0.0) != (d1 < 0.0)) {
      const double f0 = fraction(*c1[k]), f1 = fraction(*c1[k + 1]);
      xs.push_back(f0 + (f1 - f0) * d0 / (d0 - d1));
    }
  }
  std::string txt;
  bool near = false;
  for (double x : xs) {
    txt += fmt::format(" {:.3f}", x);
    near = near || std::abs(x - 0.83) <= 0.03;
  }
  o.check(near, fmt::format("alpha=0.2 vs alpha=1 cross on the stable branch at V/C_R ={}", txt.empty() ? " none" : txt));
  o.check(d.seconds < 600.0, fmt::format("sweep {:.0f}s", d.seconds));
  return o;
}

Outcome intensity() {
  Outcome o;
  // Formula against the traction limit sqrt(2 pi eta) sigma(eta), eta -> 0+.
  double worst_traction = 0.0, worst_fact = 0.0;
  for (auto [a, f] : std::vector<std::pair<double, double>>{{0.1, 0.8}, {1.0, 0.7}, {100.0, 0.6}}) {
    const LatticeParams p = at_fraction(a, f);
    FractureOptions opt;
    opt.detect_onset = false;
    const FractureResult r = stress_intensity(p, opt);
    auto k = [&](double eta) {
      return std::sqrt(2.0 * kPi * eta) * traction_ahead(eta, r, p, 1.0).sigma;
    };
    const double q = std::sqrt(10.0);
    const double lim = (q * k(1e-4) - k(1e-3)) / (q - 1.0);
    worst_traction = std::max(worst_traction, std::abs(lim / r.K1_over_sqrtG0 - 1.0));
    const PhaseProfile prof = arg_profile(p, factorization_profile());
    const double I = phase_integral(prof).value;
    const double direct = p.mu2 * std::sqrt(6.0 / r.L0) * std::exp(-I / kPi);
    worst_fact = std::max(worst_fact, std::abs(stress_intensity_from_factorization(p, prof) / direct - 1.0));
  }
  o.check(worst_traction < 1e-2, fmt::format("traction limit rel diff {:.1e}", worst_traction));
  o.check(worst_fact < 1e-2, fmt::format("factorization route rel diff {:.1e}", worst_fact));

  std::string finite;
  bool all_finite = true;
  for (double a : {0.05, 0.1, 0.2, 1.0, 100.0}) {
    LatticeParams p = LatticeParams::from_contrast(a, 0.0, 1e-3);
    p = p.with_speed(rayleigh_speed(p) - 1e-3);
    FractureOptions opt;
    opt.detect_onset = false;
    const double K = stress_intensity(p, opt).K1_over_sqrtG0;
    all_finite = all_finite && std::isfinite(K) && K > 0.0;
    finite += fmt::format(" {:.4g}", K);
  }
  o.check(all_finite, fmt::format("K_I/sqrt(G0) at C_R-1e-3:{}", finite));

  const SweepData& d = sweep_data();
  for (double a : {1.0, 100.0}) {
    const auto c = d.curve(a);
    std::vector<const SweepRow*> stable;
    for (const SweepRow* r : c)
      if (r->result && !r->result->unstable_flag) stable.push_back(r);
    if (stable.size() < 3) {
      o.check(false, fmt::format("alpha={}: stable branch has {} points", a, stable.size()));
      continue;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < stable.size(); ++k)
      if (stable[k]->result->K1_over_sqrtG0 < stable[best]->result->K1_over_sqrtG0) best = k;
    const bool interior = best > 0 && best + 1 < stable.size();
    o.check(interior,
            fmt::format("alpha={}: K_I minimum {:.5f} at V/C_R={:.3f}, stable branch {:.3f}-{:.3f}", a,
                        stable[best]->result->K1_over_sqrtG0, fraction(*stable[best]),
                        fraction(*stable.front()), fraction(*stable.back())));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Rayleigh and bound constants", rayleigh_constants},
      {"Branch admissibility", branch_admissibility},
      {"Dual kernel", dual_kernel},
      {"Asymptotes", asymptotes},
      {"Kernel properties", properties},
      {"Pole activity at alpha=1", pole_activity},
      {"Jump correspondence", jump_correspondence},
      {"Factorization", factorization},
      {"Energy release", energy},
      {"Stress intensity", intensity},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.check(false, fmt::format("exception: {}", e.what()));
    }
    if (!o.passed) ++failures;
    std::cout << fmt::format("{} {:2d} {} ({:.1f}s)", o.passed ? "PASS" : "FAIL", k + 1,
                             criteria[k].first, seconds_since(t0))
              << "\n";
    for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    std::cout.flush();
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failures, criteria.size())
            << "\n";
  return failures == 0 ? 0 : 1;
}
