#pragma once

#include <complex>
#include <utility>

#include <Eigen/Core>

#include "latfrak/lattice.hpp"

namespace latfrak {

using cplx = std::complex<double>;

struct KernelSample {
  double xi = 0.0;
  cplx z1, z2;
  cplx lam1, lam2;
  int r1 = 1, r2 = 1;
  cplx rho1, rho2;  // z_j - lam_j
  cplx F1, F2;
  cplx L;
  bool extended_form = false;  // evaluated through the multiplied-out form
};

struct LambdaRoots {
  cplx lam1, lam2;
  int r1 = 1, r2 = 1;
  bool on_spectrum1 = false, on_spectrum2 = false;
};

struct AsymptoticConstants {
  cplx d1, d2;
  cplx M0;
  cplx B1, B2;
  double L0 = 0.0;
};

// Intermediate objects of the matrix construction, exposed for testing.
struct MatrixRoute {
  cplx lam1, lam2;
  Eigen::Matrix2cd Xi;
  Eigen::Matrix2cd B;
  Eigen::Matrix2cd T;
  Eigen::Matrix2cd Omega;
  Eigen::Vector2cd R;
  cplx L;
};

// Y = m (eps + i xi V)^2 / mu2.
cplx y_param(double xi, double eps, const LatticeParams& p);

std::pair<cplx, cplx> eval_z(double xi, const LatticeParams& p);
LambdaRoots eval_lambda(double xi, const LatticeParams& p);
cplx eval_F(cplx z, double xi, const LatticeParams& p);
KernelSample eval_L_closed(double xi, const LatticeParams& p);
cplx eval_L_matrix(double xi, const LatticeParams& p);
// swap exchanges the roles of the two roots.
MatrixRoute matrix_route(double xi, const LatticeParams& p, bool swap = false);
AsymptoticConstants asymptotic_constants(const LatticeParams& p);

// Residual of the biquadratic in Lambda, relative to its largest term.
double biquadratic_residual(cplx lam, double xi, const LatticeParams& p);

namespace detail {

// How the branch flag is resolved when |Lambda| = 1 (only reachable with eps = 0).
enum class Tie { plus, strict };

// Evaluator used by the public functions. eps may be zero here; the caller
// owns the consequences. With check_pole the denominator cancellation test
// throws PoleProximityError.
KernelSample evaluate(double xi, double eps, const LatticeParams& p, Tie tie = Tie::plus,
                      bool check_pole = true);

// Branch selection for one auxiliary root.
void select_root_u(cplx u, Tie tie, cplx& lam, cplx& rho, int& r, bool& on_spectrum);
void select_root(cplx z, Tie tie, cplx& lam, cplx& rho, int& r, bool& on_spectrum);

// Relative cancellation |F2 rho1 - F1 rho2| / (|F2 rho1| + |F1 rho2|).
double denominator_cancellation(const KernelSample& s);

}  // namespace detail

}  // namespace latfrak
