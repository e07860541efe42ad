#pragma once

#include <string>
#include <vector>

#include "latfrak/kernel.hpp"
#include "latfrak/lattice.hpp"

namespace latfrak {

// How eps enters the kernel along the real axis.
//  constant:  eps(s) = eps.
//  vanishing: eps(s) = eps * s^2 / (1 + s^2). The regularization disappears at
//             the origin, so the profile near s = 0 is the pointwise eps -> 0+
//             limit while crossings away from the origin stay shifted off axis.
enum class Regularization { constant, vanishing };

std::string to_string(Regularization r);
double regularized_eps(double s, double eps, Regularization r);

struct ProfileSpec {
  double xi_max = 0.0;           // 0 selects default_xi_max
  int points_per_period = 10000;  // uniform base samples per 4 pi
  double refine_threshold = 0.78539816339744831;  // pi/4
  int max_depth = 12;
  double curvature_tol = 2e-6;  // allowed midpoint miss of linearly interpolated ln L
  double jump_threshold = 0.78539816339744831;  // pi/4
  Regularization regularization = Regularization::constant;
  double s_min = 1e-8;
  int log_points_per_decade = 400;  // geometric grid near the origin
  bool mirror = false;              // sample L(-s) instead of L(s)
  unsigned threads = 0;
};

struct Jump {
  double xi = 0.0;
  double magnitude = 0.0;
};

struct PhaseProfile {
  std::vector<double> grid;
  std::vector<double> arg_values;
  std::vector<cplx> L;
  std::vector<Jump> jumps;
  int index = 0;
  double index_raw = 0.0;
  double eps_used = 0.0;
  Regularization regularization = Regularization::constant;
  double base_step = 0.0;
  double xi_max = 0.0;
  double tail_arg = 0.0;
  bool mirror = false;
  bool unstable_regime = false;
  std::vector<std::string> warnings;

  double eps_at(double s) const { return regularized_eps(s, eps_used, regularization); }
};

PhaseProfile arg_profile(const LatticeParams& p, const ProfileSpec& spec = {});

// Winding index of L over the real line from the odd extension of the profile.
int winding_index(const PhaseProfile& profile);

struct PhaseIntegral {
  double value = 0.0;
  double tail = 0.0;              // analytic tail contribution beyond xi_max
  double quadrature_error = 0.0;  // estimate from a coarser rule
  std::vector<std::string> warnings;
};

// Integral of arg L(s) / s over (0, infinity).
PhaseIntegral phase_integral(const PhaseProfile& profile);

// Jumps per unit xi over (0, 8 pi].
double jump_density(const PhaseProfile& profile);

}  // namespace latfrak
