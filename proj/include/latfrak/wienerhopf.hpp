#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latfrak/dispersion.hpp"
#include "latfrak/kernel.hpp"
#include "latfrak/phase.hpp"

namespace latfrak {

struct FactorizationResult {
  cplx xi;
  std::optional<cplx> L_plus;   // defined for Im xi >= 0
  std::optional<cplx> L_minus;  // defined for Im xi <= 0
  double residual = 0.0;        // |L+ L- - L| / |L| on the real axis, else NaN
  double quadrature_error = 0.0;
  std::vector<std::string> warnings;
};

// Cauchy-integral factorization L = L+ L- built once from an index-zero
// profile. ln L is taken piecewise linear between profile samples and the
// integral over each cell is done in closed form, so the 1/(s - xi)
// singularity is treated exactly. The negative axis follows from
// L(-s) = conj L(s) and the range beyond xi_max from ln L ~ c / s^2.
class Factorization {
public:
  Factorization(const PhaseProfile& profile, const LatticeParams& p);

  FactorizationResult at(cplx xi) const;

  // ln L+ and ln L- by the Plemelj limits on the real axis.
  cplx log_plus_real(double xi) const;
  cplx log_minus_real(double xi) const;
  // ln L+ for Im xi > 0 and ln L- for Im xi < 0.
  cplx log_plus(cplx xi) const;
  cplx log_minus(cplx xi) const;

  // L-(xi)/L+(xi) on the real axis.
  cplx minus_over_plus(double xi) const;

  // |L+(xi + i delta) L-(xi - i delta) - L(xi)| / |L(xi)|.
  double offaxis_residual(double xi, double delta) const;

  const PhaseProfile& profile() const { return profile_; }
  const LatticeParams& params() const { return params_; }
  double xi_max() const { return x_.back(); }

private:
  struct Cauchy {
    cplx value;
    cplx coarse;
  };
  Cauchy cauchy(cplx xi, bool real_axis, cplx ell_xi) const;
  cplx tail(cplx xi) const;
  cplx ell_interp(double xi) const;
  void near_jump_warning(double xi, std::vector<std::string>& w) const;

  PhaseProfile profile_;
  LatticeParams params_;
  std::vector<double> x_;   // full symmetric node set
  std::vector<cplx> ell_;   // ln L at the nodes
  cplx ell_end_;
};

FactorizationResult factorize_at(cplx xi, const PhaseProfile& profile, const LatticeParams& p);

// Solution of the point-load problem with load intensity C.
class PointLoadSolution {
public:
  PointLoadSolution(std::shared_ptr<const Factorization> f, cplx C);
  cplx S_plus(cplx xi) const;
  cplx S_minus(cplx xi) const;
  // G from the limit of the product of the two halves at xi -> 0,
  // i.e. C^2 lim L-(xi)/L+(xi) on the real axis.
  double energy_release_limit() const;
  cplx intensity() const { return C_; }

private:
  std::shared_ptr<const Factorization> f_;
  cplx C_;
};

PointLoadSolution solve_point_load(const LatticeParams& p, const PhaseProfile& profile, cplx C);

enum class LoadTermKind { pole, zero };

struct LoadTerm {
  double xi0 = 0.0;
  LoadTermKind kind = LoadTermKind::pole;
  double exponent = 0.0;  // a or b; non-positive means "measure it"
  cplx coefficient;
};

struct LoadSpec {
  std::vector<LoadTerm> terms;
};

class GeneralLoadSolution {
public:
  GeneralLoadSolution(std::shared_ptr<const Factorization> f, LoadSpec load, double eps);
  cplx S_plus(cplx xi) const;
  cplx S_minus(cplx xi) const;
  // L+ S+ + S- / L-: the sum of Lorentzian pairs that tends to delta terms.
  cplx right_hand_side(double xi) const;
  const LoadSpec& load() const { return load_; }

private:
  cplx sum_plus(cplx xi) const;
  cplx sum_minus(cplx xi) const;
  std::shared_ptr<const Factorization> f_;
  LoadSpec load_;
  double eps_;
};

// Log-log slope of |L+| (pole anchors) or |L-| (zero anchors) at distances
// d in [10^-3.5, 10^-2] from the anchor. Returns the positive exponent.
double measure_exponent(const Factorization& f, double xi0, LoadTermKind kind);

GeneralLoadSolution solve_general_load(const LatticeParams& p, const PhaseProfile& profile,
                                       const CrossingSet& crossings, LoadSpec load);

// Space-domain loads of the two elementary cases. zeta = 1/|V_g - V|.
cplx load_phi_A(double eta, double eps, double zeta, double xi_p, double a, cplx CA);
cplx load_phi_B(double eta, double eps, double zeta, double xi_z, double b, cplx CB);

}  // namespace latfrak
