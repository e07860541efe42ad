#include "latfrak/lattice.hpp"

#include <cmath>
#include <fmt/format.h>

#include "latfrak/error.hpp"

namespace latfrak {

LatticeParams LatticeParams::from_stiffness(double mu1, double mu2, double V, double eps,
                                            double m) {
  LatticeParams p;
  p.m = m;
  p.mu1 = mu1;
  p.mu2 = mu2;
  p.alpha = mu1 / mu2;
  p.V = V;
  p.eps = eps;
  return p;
}

LatticeParams LatticeParams::from_contrast(double alpha, double V, double eps) {
  if (!(alpha > 0.0)) throw ParameterError(fmt::format("alpha must be positive, got {}", alpha));
  return from_stiffness(1.0, 1.0 / alpha, V, eps, 1.0);
}

LatticeParams LatticeParams::with_speed(double v) const {
  LatticeParams p = *this;
  p.V = v;
  return p;
}

LatticeParams LatticeParams::with_eps(double e) const {
  LatticeParams p = *this;
  p.eps = e;
  return p;
}

double LatticeParams::v_star() const { return V * std::sqrt(m / mu2); }

void LatticeParams::validate(bool need_eps, bool need_speed) const {
  if (!(m > 0.0) || !(mu1 > 0.0) || !(mu2 > 0.0) || !std::isfinite(m) ||
      !std::isfinite(mu1) || !std::isfinite(mu2))
    throw ParameterError(fmt::format("m, mu1, mu2 must be positive (m={}, mu1={}, mu2={})", m,
                                     mu1, mu2));
  if (alpha != mu1 / mu2)
    throw ParameterError(
        fmt::format("alpha={} inconsistent with mu1/mu2={}", alpha, mu1 / mu2));
  if (need_speed && !(V > 0.0 && std::isfinite(V)))
    throw ParameterError(fmt::format("crack speed must be positive, got {}", V));
  if (need_eps && !(eps > 0.0 && std::isfinite(eps)))
    throw ParameterError(fmt::format("eps must be positive, got {}", eps));
}

EpsSchedule EpsSchedule::geometric(double first, double ratio, int count) {
  EpsSchedule s;
  double e = first;
  for (int k = 0; k < count; ++k, e *= ratio) s.values.push_back(e);
  return s;
}

// Rationalized: a - sqrt(b) = (a^2 - b)/(a + sqrt(b)) with a^2 - b = 6 mu1 mu2.
double rayleigh_speed(const LatticeParams& p) {
  p.validate(false, false);
  const double root = std::sqrt(3.0 * p.mu1 * p.mu1 + (p.mu1 - p.mu2) * (p.mu1 - p.mu2));
  const double inner = 6.0 * p.mu1 * p.mu2 / (2.0 * p.mu1 + p.mu2 + root);
  return std::sqrt(inner) / (2.0 * std::sqrt(p.m));
}

double g_bound(double alpha) {
  if (!(alpha > 0.0)) throw ParameterError(fmt::format("alpha must be positive, got {}", alpha));
  if (std::isinf(alpha)) return 0.375;
  const double root = std::sqrt(3.0 * alpha * alpha + (alpha - 1.0) * (alpha - 1.0));
  return 1.5 * alpha / (2.0 * alpha + 1.0 + root);
}

double g_bound_slope(double alpha) {
  if (!(alpha > 0.0)) throw ParameterError(fmt::format("alpha must be positive, got {}", alpha));
  const double root = std::sqrt(3.0 * alpha * alpha + (alpha - 1.0) * (alpha - 1.0));
  return 0.5 - (4.0 * alpha - 1.0) / (4.0 * root);
}

CheckedParams validate_subrayleigh(const LatticeParams& p, bool allow_static) {
  p.validate(false, false);
  const double cr = rayleigh_speed(p);
  if (p.V == 0.0 && !allow_static)
    throw RegimeError("zero crack speed is not a fracture configuration", p.V, cr);
  if (p.V < 0.0 || !std::isfinite(p.V))
    throw ParameterError(fmt::format("crack speed must be non-negative, got {}", p.V));
  if (p.V > cr)
    throw RegimeError(fmt::format("V={} exceeds the Rayleigh speed C_R={}", p.V, cr), p.V, cr);
  return CheckedParams{p, p.v_star(), cr, p.V / cr};
}

}  // namespace latfrak
