#pragma once

#include <vector>

namespace latfrak {

// Physical configuration of the lattice and the moving crack.
// alpha is stored redundantly and must equal mu1/mu2 exactly.
struct LatticeParams {
  double m = 1.0;
  double mu1 = 1.0;
  double mu2 = 1.0;
  double alpha = 1.0;
  double V = 0.0;
  double eps = 1e-3;

  static LatticeParams from_stiffness(double mu1, double mu2, double V, double eps,
                                      double m = 1.0);
  // mu1 = 1, mu2 = 1/alpha, m = 1.
  static LatticeParams from_contrast(double alpha, double V, double eps);

  LatticeParams with_speed(double v) const;
  LatticeParams with_eps(double e) const;

  // Dimensionless speed V* = V sqrt(m/mu2).
  double v_star() const;

  // Throws ParameterError on non-positive or inconsistent fields.
  // eps and V are checked only when requested.
  void validate(bool need_eps = true, bool need_speed = true) const;
};

// Decreasing regularization sequence used for the eps -> 0+ limit.
struct EpsSchedule {
  std::vector<double> values;
  static EpsSchedule geometric(double first = 1e-2, double ratio = 0.5, int count = 7);
};

double rayleigh_speed(const LatticeParams& p);
double g_bound(double alpha);
double g_bound_slope(double alpha);

struct CheckedParams {
  LatticeParams params;
  double v_star = 0.0;
  double rayleigh = 0.0;
  double v_over_cr = 0.0;
};

// Accepts iff 0 < V <= C_R. V = 0 is accepted only with allow_static.
CheckedParams validate_subrayleigh(const LatticeParams& p, bool allow_static = false);

}  // namespace latfrak
