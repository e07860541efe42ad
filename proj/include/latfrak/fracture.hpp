#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latfrak/lattice.hpp"
#include "latfrak/phase.hpp"

namespace latfrak {

struct FractureOptions {
  // Regularization strengths for the eps -> 0+ limit.
  EpsSchedule schedule = EpsSchedule::geometric();
  ProfileSpec profile = vanishing_profile();
  // Locate the speed of the global maximum of G0/G and flag slower speeds.
  bool detect_onset = true;
  double extrapolation_tol = 0.02;

  static ProfileSpec vanishing_profile() {
    ProfileSpec s;
    s.regularization = Regularization::vanishing;
    // The phase integral only needs the argument resolved.
    s.curvature_tol = 0.0;
    return s;
  }
};

struct FractureResult {
  double alpha = 0.0;
  double V = 0.0;
  double V_over_CR = 0.0;
  double V_over_CR0 = 0.0;
  double phase_integral = 0.0;
  double G0_over_G = 0.0;
  double K1_over_sqrtG0 = 0.0;
  double L0 = 0.0;
  bool unstable_flag = false;
  std::vector<double> eps_schedule;
  std::vector<double> integrals;  // phase integral per schedule entry
  double eps_final = 0.0;
  bool extrapolated = false;
  double extrapolation_change = 0.0;  // |G0/G| change between the last two extrapolants
  double quadrature_error = 0.0;
  double tail_estimate = 0.0;
  double jump_density = 0.0;
  double onset_V_over_CR = 0.0;  // speed of the G0/G maximum; slower speeds are unstable
  std::vector<std::string> warnings;
};

FractureResult energy_ratio(const LatticeParams& p, const FractureOptions& opt = {});
FractureResult stress_intensity(const LatticeParams& p, const FractureOptions& opt = {});

// K_I / sqrt(G0) recovered from the factorization: mu2 sqrt 6 lim |S+(xi) sqrt(-i xi)|
// for unit load as xi -> 0. Independent of the phase-integral quadrature.
double stress_intensity_from_factorization(const LatticeParams& p, const PhaseProfile& profile);

struct Traction {
  double eta = 0.0;
  double S = 0.0;      // crack-line quantity ahead of the tip
  double sigma = 0.0;  // bond stress mu2 sqrt 3 S
};

Traction traction_ahead(double eta, const LatticeParams& p, double G0,
                        const FractureOptions& opt = {});
Traction traction_ahead(double eta, const FractureResult& r, const LatticeParams& p, double G0);

// V/C_R at which G0/G attains its global maximum for the contrast of p,
// scanned at V/C_R = 0.10, 0.12, ..., 0.98 with one regularization strength.
// Results are cached per (m, mu1, mu2).
double instability_onset(const LatticeParams& p, const FractureOptions& opt = {});

// C_R for alpha -> 0 in the mu1 = 1, m = 1 normalization: sqrt(3)/2.
double rayleigh_speed_limit();

struct SpeedGrid {
  int n_speeds = 60;
  double lo = 0.05;  // fractions of C_R(alpha)
  double hi = 0.99;
  std::vector<double> fractions() const;
};

struct SweepRow {
  double alpha = 0.0;
  double V = 0.0;
  std::optional<FractureResult> result;
  std::string error;
};

// One row per (alpha, speed). Parameters follow template_params with
// mu2 = mu1 / alpha. Failures are recorded per row.
std::vector<SweepRow> sweep(const std::vector<double>& alphas, const SpeedGrid& grid,
                            const LatticeParams& template_params,
                            const FractureOptions& opt = {}, unsigned threads = 0);

LatticeParams contrast_params(const LatticeParams& template_params, double alpha, double V);

}  // namespace latfrak
