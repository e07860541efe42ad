#include "latfrak/phase.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "latfrak/dispersion.hpp"
#include "latfrak/error.hpp"
#include "latfrak/parallel.hpp"

namespace latfrak {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTailTol = 1e-3;
constexpr double kIndexTol = 1e-2;
constexpr double kUnstableDensity = 3.0;

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

struct Node {
  double s;
  cplx L;
};

class Sampler {
public:
  Sampler(const LatticeParams& p, const ProfileSpec& spec) : p_(p), spec_(spec) {}

  cplx operator()(double s) const {
    const double e = regularized_eps(s, p_.eps, spec_.regularization);
    const double x = spec_.mirror ? -s : s;
    return detail::evaluate(x, e, p_).L;
  }

  // Bisects [a, b] until every step of arg L is below the refinement threshold,
  // then while linear interpolation of ln L misses the midpoint by more than
  // the curvature tolerance.
  void refine(const Node& a, const Node& b, int depth, std::vector<Node>& out) const {
    const double step = wrap(std::arg(b.L) - std::arg(a.L));
    if (std::abs(step) <= spec_.refine_threshold) {
      if (spec_.curvature_tol <= 0.0 || depth >= spec_.max_depth) return;
      const double mid = 0.5 * (a.s + b.s);
      const Node m{mid, (*this)(mid)};
      const cplx miss = std::log(m.L / a.L) - 0.5 * std::log(b.L / a.L);
      if (std::abs(miss) <= spec_.curvature_tol) return;
      refine(a, m, depth + 1, out);
      out.push_back(m);
      refine(m, b, depth + 1, out);
      return;
    }
    if (depth >= spec_.max_depth)
      throw UnresolvedFeatureError(
          fmt::format("phase step {} unresolved on [{}, {}] after {} refinements", step, a.s,
                      b.s, depth),
          a.s, b.s);
    const double mid = 0.5 * (a.s + b.s);
    const Node m{mid, (*this)(mid)};
    refine(a, m, depth + 1, out);
    out.push_back(m);
    refine(m, b, depth + 1, out);
  }

private:
  const LatticeParams& p_;
  const ProfileSpec& spec_;
};

std::vector<double> base_grid(const ProfileSpec& spec, double xi_max, double V, double& h) {
  // At least 64 samples per 4 pi per unit of 1/V for slow rays.
  const double per_period = std::max<double>(spec.points_per_period, 64.0 / V);
  const long n = std::max<long>(16, std::lround(per_period * xi_max / (4.0 * kPi)));
  h = xi_max / double(n);
  // Geometric spacing from s_min until it reaches the uniform step, so that
  // ln L ~ -ln s near the origin is interpolated as accurately as elsewhere.
  std::vector<double> g;
  const double ratio = std::pow(10.0, 1.0 / spec.log_points_per_decade);
  double s = spec.s_min;
  while (s * (ratio - 1.0) < h && s < xi_max) {
    g.push_back(s);
    s *= ratio;
  }
  for (long k = 0; s + double(k) * h < xi_max - 0.5 * h; ++k) g.push_back(s + double(k) * h);
  g.push_back(xi_max);
  return g;
}

void detect_jumps(PhaseProfile& prof, const std::vector<std::size_t>& base_index,
                  double threshold) {
  // A jump is a run of base cells that each step by more than threshold/2 in
  // the same direction and whose total exceeds the threshold.
  const std::size_t nc = base_index.size() - 1;
  std::size_t c = 0;
  while (c < nc) {
    auto delta = [&](std::size_t k) {
      return prof.arg_values[base_index[k + 1]] - prof.arg_values[base_index[k]];
    };
    const double d0 = delta(c);
    if (std::abs(d0) <= 0.5 * threshold) {
      ++c;
      continue;
    }
    std::size_t e = c;
    double total = 0.0;
    while (e < nc && std::abs(delta(e)) > 0.5 * threshold && (delta(e) > 0) == (d0 > 0)) {
      total += delta(e);
      ++e;
    }
    if (std::abs(total) > threshold) {
      double best = -1.0, where = prof.grid[base_index[c]];
      for (std::size_t k = base_index[c]; k < base_index[e]; ++k) {
        const double step = std::abs(prof.arg_values[k + 1] - prof.arg_values[k]) /
                            (prof.grid[k + 1] - prof.grid[k]);
        if (step > best) {
          best = step;
          where = 0.5 * (prof.grid[k] + prof.grid[k + 1]);
        }
      }
      prof.jumps.push_back({where, total});
    }
    c = e;
  }
}

}  // namespace

std::string to_string(Regularization r) {
  return r == Regularization::constant ? "constant" : "vanishing";
}

double regularized_eps(double s, double eps, Regularization r) {
  if (r == Regularization::constant) return eps;
  const double s2 = s * s;
  return eps * s2 / (1.0 + s2);
}

PhaseProfile arg_profile(const LatticeParams& p, const ProfileSpec& spec) {
  p.validate(true, true);
  if (spec.points_per_period < 16 || spec.max_depth < 0 || !(spec.s_min > 0.0))
    throw ParameterError("invalid profile grid specification");
  PhaseProfile prof;
  prof.eps_used = p.eps;
  prof.regularization = spec.regularization;
  prof.mirror = spec.mirror;
  prof.xi_max = spec.xi_max > 0.0 ? spec.xi_max : default_xi_max(p);

  const Sampler sample(p, spec);
  const std::vector<double> base = base_grid(spec, prof.xi_max, p.V, prof.base_step);
  const std::size_t nb = base.size();
  std::vector<cplx> Lb(nb);
  std::vector<std::vector<Node>> inserted(nb - 1);
  const std::size_t chunk = 4096;
  const std::size_t nchunks = (nb + chunk - 1) / chunk;
  parallel_for(
      nchunks,
      [&](std::size_t ci) {
        const std::size_t lo = ci * chunk, hi = std::min(nb, lo + chunk);
        for (std::size_t k = lo; k < hi; ++k) Lb[k] = sample(base[k]);
      },
      spec.threads);
  parallel_for(
      nchunks,
      [&](std::size_t ci) {
        const std::size_t lo = ci * chunk, hi = std::min(nb - 1, lo + chunk);
        for (std::size_t k = lo; k < hi; ++k)
          sample.refine({base[k], Lb[k]}, {base[k + 1], Lb[k + 1]}, 0, inserted[k]);
      },
      spec.threads);

  std::vector<std::size_t> base_index(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    base_index[k] = prof.grid.size();
    prof.grid.push_back(base[k]);
    prof.L.push_back(Lb[k]);
    if (k + 1 < nb)
      for (const Node& n : inserted[k]) {
        prof.grid.push_back(n.s);
        prof.L.push_back(n.L);
      }
  }

  // Unwrap inward from the far end, where arg L tends to zero.
  const std::size_t n = prof.grid.size();
  prof.arg_values.assign(n, 0.0);
  prof.arg_values[n - 1] = std::arg(prof.L[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;)
    prof.arg_values[k] =
        prof.arg_values[k + 1] - wrap(std::arg(prof.L[k + 1]) - std::arg(prof.L[k]));
  prof.tail_arg = prof.arg_values[n - 1];
  if (std::abs(prof.tail_arg) > kTailTol)
    prof.warnings.push_back(
        fmt::format("arg L = {} at xi_max = {} exceeds the tail tolerance", prof.tail_arg,
                    prof.xi_max));

  detect_jumps(prof, base_index, spec.jump_threshold);

  // Odd extension: arg L(-s) = -arg L(s); continuity through s = 0 fixes the
  // branch on the negative axis.
  const double start = prof.arg_values.front();
  const double k0 = std::round(start / kPi);
  prof.index_raw = (prof.tail_arg - kPi * k0) / kPi;
  if (prof.mirror) prof.index_raw = -prof.index_raw;
  if (std::abs(start / kPi - k0) > kIndexTol)
    prof.warnings.push_back(
        fmt::format("arg L near the origin ({}) is not a multiple of pi", start));
  prof.index = static_cast<int>(std::lround(prof.index_raw));

  prof.unstable_regime = jump_density(prof) > kUnstableDensity;
  return prof;
}

double jump_density(const PhaseProfile& profile) {
  const double window = std::min(8.0 * kPi, profile.xi_max);
  const auto count = std::count_if(profile.jumps.begin(), profile.jumps.end(),
                                   [&](const Jump& j) { return j.xi <= window; });
  return double(count) / window;
}

int winding_index(const PhaseProfile& profile) {
  if (profile.grid.empty()) return 0;
  const double start = profile.arg_values.front();
  const double frac = std::abs(start / kPi - std::round(start / kPi));
  if (std::abs(profile.index_raw - std::round(profile.index_raw)) > kIndexTol || frac > kIndexTol)
    throw UnwrappingError(fmt::format("winding index {} is not an integer (origin arg {})",
                                      profile.index_raw, start));
  return profile.index;
}

PhaseIntegral phase_integral(const PhaseProfile& profile) {
  PhaseIntegral out;
  if (winding_index(profile) != 0)
    throw UnwrappingError(fmt::format("nonzero winding index {}", profile.index));
  const auto& g = profile.grid;
  const auto& a = profile.arg_values;
  const std::size_t n = g.size();
  // Near zero arg L / s is bounded; the first cell is taken as constant.
  double fine = a.front();
  for (std::size_t k = 0; k + 1 < n; ++k)
    fine += 0.5 * (a[k] / g[k] + a[k + 1] / g[k + 1]) * (g[k + 1] - g[k]);
  // Coarse rule on every other node for the error estimate.
  double coarse = a.front();
  std::size_t prev = 0;
  for (std::size_t k = 2; k < n; k += 2) {
    coarse += 0.5 * (a[prev] / g[prev] + a[k] / g[k]) * (g[k] - g[prev]);
    prev = k;
  }
  if (prev + 1 < n)
    coarse += 0.5 * (a[prev] / g[prev] + a[n - 1] / g[n - 1]) * (g[n - 1] - g[prev]);
  // Beyond xi_max arg L decays like s^-2.
  out.tail = 0.5 * profile.tail_arg;
  out.value = fine + out.tail;
  out.quadrature_error = std::abs(fine - coarse) / 3.0;
  if (std::abs(profile.tail_arg) > kTailTol)
    out.warnings.push_back(fmt::format("tail not converged, estimate {}", out.tail));
  return out;
}

}  // namespace latfrak
