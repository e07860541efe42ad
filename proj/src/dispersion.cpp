#include "latfrak/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fmt/format.h>

#include "latfrak/error.hpp"
#include "latfrak/kernel.hpp"

namespace latfrak {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kActivityTol = 1e-6;
constexpr double kLimitEps = 1e-9;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double d_coefficient(Branch b, const LatticeParams& p) {
  const double root = std::sqrt(3.0 * p.mu1 * p.mu1 + (p.mu1 - p.mu2) * (p.mu1 - p.mu2));
  switch (b) {
    case Branch::D1:
      return std::sqrt(6.0 * p.mu1 * p.mu2 / (2.0 * p.mu1 + p.mu2 + root));
    case Branch::D2:
      return std::sqrt(6.0 * p.mu1);
    default:
      return std::sqrt(2.0 * p.mu1 + p.mu2 + root);
  }
}

// Value and derivative of an |amplitude * trig| branch. At a zero of the trig
// factor the right derivative is returned.
GroupVelocity abs_trig_slope(double amp, double arg, double darg, bool is_sin) {
  const double f = is_sin ? std::sin(arg) : std::cos(arg);
  const double df = (is_sin ? std::cos(arg) : -std::sin(arg)) * darg;
  GroupVelocity g;
  if (std::abs(f) < 1e-15) {
    g.one_sided = true;
    g.value = amp * std::abs(df);
  } else {
    g.value = amp * sgn(f) * df;
  }
  return g;
}

double bisect(const std::function<double(double)>& f, double a, double b, double fa) {
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> sign_changes(const std::function<double(double)>& f, double xi_max,
                                 int points_per_period) {
  const long n = std::max<long>(16, std::lround(points_per_period * xi_max / (4.0 * kPi)));
  const double h = xi_max / double(n);
  std::vector<double> out;
  double a = h * 1e-6;
  double fa = f(a);
  for (long k = 1; k <= n; ++k) {
    const double b = h * double(k);
    const double fb = f(b);
    if (fb == 0.0) {
      out.push_back(b);
    } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      out.push_back(bisect(f, a, b, fa));
    }
    a = b;
    fa = fb;
  }
  return out;
}

}  // namespace

std::string to_string(Branch b) {
  static const char* names[] = {"N1", "N2", "N3", "N4", "D1", "D2", "D3"};
  return names[static_cast<int>(b)];
}

std::string to_string(CrossingKind k) {
  static const char* names[] = {"root", "pole", "removable", "inactive_pole"};
  return names[static_cast<int>(k)];
}

std::string to_string(HalfPlane h) {
  static const char* names[] = {"upper", "lower", "none"};
  return names[static_cast<int>(h)];
}

BranchRole branch_role(Branch b) {
  switch (b) {
    case Branch::N1:
    case Branch::N2:
      return BranchRole::root;
    case Branch::N3:
    case Branch::N4:
      return BranchRole::removable;
    case Branch::D1:
      return BranchRole::pole;
    default:
      return BranchRole::conditional_pole;
  }
}

double branch_value(Branch b, double xi, const LatticeParams& p) {
  const double im = 1.0 / p.m;
  const double s4 = std::sin(0.25 * xi), c4 = std::cos(0.25 * xi), s2 = std::sin(0.5 * xi);
  switch (b) {
    case Branch::N1:
      return std::sqrt(6.0 * p.mu2 * im) * std::abs(c4);
    case Branch::N2:
      return std::sqrt((2.0 * p.mu2 * s4 * s4 + 4.0 * p.mu1 * s2 * s2) * im);
    case Branch::N3:
      return std::sqrt(6.0 * p.mu2 * im) * std::abs(s4);
    case Branch::N4:
      return std::sqrt((2.0 * p.mu2 * c4 * c4 + 4.0 * p.mu1 * s2 * s2) * im);
    default:
      return d_coefficient(b, p) * std::sqrt(im) * std::abs(s2);
  }
}

GroupVelocity group_velocity(Branch b, double xi, const LatticeParams& p) {
  const double im = 1.0 / p.m;
  switch (b) {
    case Branch::N1:
      return abs_trig_slope(std::sqrt(6.0 * p.mu2 * im), 0.25 * xi, 0.25, false);
    case Branch::N3:
      return abs_trig_slope(std::sqrt(6.0 * p.mu2 * im), 0.25 * xi, 0.25, true);
    case Branch::N2:
    case Branch::N4: {
      const double sign = b == Branch::N2 ? 1.0 : -1.0;
      const double omega = branch_value(b, xi, p);
      const double dG = (sign * 0.5 * p.mu2 * std::sin(0.5 * xi) + 2.0 * p.mu1 * std::sin(xi)) * im;
      GroupVelocity g;
      if (omega < 1e-12) {
        // Zero of the radicand: the branch behaves like |xi - xi0| times a constant.
        g.one_sided = true;
        const double h = 1e-7;
        g.value = (branch_value(b, xi + h, p) - omega) / h;
      } else {
        g.value = dG / (2.0 * omega);
      }
      return g;
    }
    default:
      return abs_trig_slope(d_coefficient(b, p) * std::sqrt(im), 0.5 * xi, 0.5, true);
  }
}

double branch_maximum(const LatticeParams& p) {
  const double im = 1.0 / p.m;
  const double vals[] = {std::sqrt(6.0 * p.mu2 * im), std::sqrt((2.0 * p.mu2 + 4.0 * p.mu1) * im),
                         d_coefficient(Branch::D3, p) * std::sqrt(im),
                         d_coefficient(Branch::D2, p) * std::sqrt(im)};
  return *std::max_element(std::begin(vals), std::end(vals));
}

PoleActivity pole_active(Branch b, double xi, const LatticeParams& p, ActivityRule rule) {
  p.validate(false, false);
  PoleActivity out;
  if (b == Branch::D1) {
    out.active = true;
    out.q_rel = 0.0;
    return out;
  }
  if (b != Branch::D2 && b != Branch::D3)
    throw ParameterError("pole activity is defined for the D branches only");
  const double omega = branch_value(b, xi, p);
  if (xi == 0.0 || omega <= 1e-12 * std::max(1.0, std::abs(xi))) {
    out.boundary = true;
    return out;
  }
  const LatticeParams q = p.with_speed(omega / std::abs(xi));
  const double eps = rule == ActivityRule::limit ? kLimitEps : 0.0;
  const auto tie = rule == ActivityRule::limit ? detail::Tie::strict : detail::Tie::plus;
  const KernelSample s = detail::evaluate(std::abs(xi), eps, q, tie, false);
  out.q_rel = detail::denominator_cancellation(s);
  out.r_ratio_sign = s.r1 * s.r2;
  out.active = out.q_rel < kActivityTol;
  return out;
}

double default_xi_max(const LatticeParams& p) {
  const double base = 40.0 * kPi;
  if (!(p.V > 0.0)) return base;
  const double reach = 1.25 * branch_maximum(p) / p.V;
  if (reach <= base) return base;
  return 4.0 * kPi * std::ceil(reach / (4.0 * kPi));
}

CrossingSet crossings(const LatticeParams& p, const CrossingOptions& opt) {
  p.validate(false, true);
  CrossingSet out;
  out.xi_max = opt.xi_max > 0.0 ? opt.xi_max : default_xi_max(p);
  if (opt.points_per_period < 4) throw ParameterError("crossing grid too coarse");
  for (Branch b : kAllBranches) {
    auto f = [&](double x) { return branch_value(b, x, p) - x * p.V; };
    for (double xs : sign_changes(f, out.xi_max, opt.points_per_period)) {
      Crossing c;
      c.xi_star = xs;
      c.branch = b;
      c.vg = group_velocity(b, xs, p).value;
      c.tangential = std::abs(p.V - c.vg) < opt.tangency_tol;
      switch (branch_role(b)) {
        case BranchRole::root:
          c.kind = CrossingKind::root;
          break;
        case BranchRole::removable:
          c.kind = CrossingKind::removable;
          break;
        case BranchRole::pole:
          c.kind = CrossingKind::pole;
          break;
        case BranchRole::conditional_pole: {
          const PoleActivity act = pole_active(b, xs, p, ActivityRule::limit);
          c.kind = act.active && !act.boundary ? CrossingKind::pole : CrossingKind::inactive_pole;
          break;
        }
      }
      const bool classify = c.kind == CrossingKind::root || c.kind == CrossingKind::pole;
      if (c.tangential) {
        out.warnings.push_back(fmt::format("tangential crossing on {} at xi={}", to_string(b), xs));
      } else if (classify) {
        c.half_plane = p.V < c.vg ? HalfPlane::lower : HalfPlane::upper;
      }
      out.items.push_back(c);
    }
  }
  std::sort(out.items.begin(), out.items.end(),
            [](const Crossing& a, const Crossing& b) { return a.xi_star < b.xi_star; });
  return out;
}

std::vector<double> radical_transitions(const LatticeParams& p, double xi_max,
                                        int points_per_period) {
  p.validate(false, true);
  if (xi_max <= 0.0) xi_max = default_xi_max(p);
  const double a = p.alpha;
  auto radical = [&](double x) {
    const double Y = -p.m * x * x * p.V * p.V / p.mu2;
    const double s2 = std::pow(std::sin(0.5 * x), 2);
    const double q = a * s2 + Y / 3.0;
    return Y * Y / 9.0 - 4.0 * s2 * q * (q + 1.0 - a);
  };
  return sign_changes(radical, xi_max, points_per_period);
}

}  // namespace latfrak
