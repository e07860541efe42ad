#include "latfrak/wienerhopf.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "latfrak/error.hpp"

namespace latfrak {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// phi(w) = 1 - log(1 + w)/w, the linear part of one cell integral.
cplx phi_c(cplx w) {
  if (std::abs(w) < 0.1) {
    cplx sum = 0.0, pw = w;
    for (int k = 1; k < 20; ++k) {
      sum += (k % 2 ? 1.0 : -1.0) * pw / double(k + 1);
      pw *= w;
    }
    return sum;
  }
  return 1.0 - std::log(1.0 + w) / w;
}

double phi_r(double w) {
  if (std::abs(w) < 0.1) {
    double sum = 0.0, pw = w;
    for (int k = 1; k < 20; ++k) {
      sum += (k % 2 ? 1.0 : -1.0) * pw / double(k + 1);
      pw *= w;
    }
    return sum;
  }
  return 1.0 - std::log1p(w) / w;
}

cplx log1p_c(cplx w) {
  if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
  return std::log(1.0 + w);
}

// Integral of ds / (s^2 (s - xi)) over (X, infinity).
cplx tail_kernel(cplx xi, double X) {
  if (std::abs(xi) < 0.1 * X) {
    cplx sum = 0.0, pw = 1.0;
    for (int n = 0; n < 30; ++n) {
      sum += pw / (double(n + 2) * std::pow(X, n + 2));
      pw *= xi;
    }
    return sum;
  }
  return -std::log(1.0 - xi / X) / (xi * xi) - 1.0 / (xi * X);
}

}  // namespace

Factorization::Factorization(const PhaseProfile& profile, const LatticeParams& p)
    : profile_(profile), params_(p) {
  if (profile.mirror) throw FactorizationError("factorization needs a profile on the positive axis");
  if (profile.grid.size() < 2) throw FactorizationError("profile too short");
  if (winding_index(profile) != 0)
    throw FactorizationError(
        fmt::format("winding index {} is nonzero; the Cauchy-integral split is invalid",
                    profile.index));
  const std::size_t n = profile.grid.size();
  x_.resize(2 * n);
  ell_.resize(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx l(std::log(std::abs(profile.L[k])), profile.arg_values[k]);
    x_[n + k] = profile.grid[k];
    ell_[n + k] = l;
    x_[n - 1 - k] = -profile.grid[k];
    ell_[n - 1 - k] = std::conj(l);
  }
  ell_end_ = ell_.back();
}

cplx Factorization::tail(cplx xi) const {
  const double X = x_.back();
  return X * X * (ell_end_ * tail_kernel(xi, X) - std::conj(ell_end_) * tail_kernel(-xi, X));
}

cplx Factorization::ell_interp(double xi) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), xi);
  if (it == x_.begin() || it == x_.end())
    throw DomainError(fmt::format("xi={} outside the factorization window", xi));
  const std::size_t k = std::size_t(it - x_.begin()) - 1;
  const double t = (xi - x_[k]) / (x_[k + 1] - x_[k]);
  return ell_[k] + t * (ell_[k + 1] - ell_[k]);
}

Factorization::Cauchy Factorization::cauchy(cplx xi, bool real_axis, cplx ell_xi) const {
  const std::size_t n = x_.size();
  auto sweep = [&](std::size_t stride) {
    cplx sum = 0.0;
    std::size_t k = 0;
    while (k + 1 < n) {
      const std::size_t j = std::min(n - 1, k + stride);
      const double a = x_[k], b = x_[j];
      const cplx la = ell_[k], lb = ell_[j];
      if (real_axis) {
        const double xr = xi.real();
        if (a <= xr && xr <= b) {
          sum += lb - la;
        } else {
          const double w = (b - a) / (a - xr);
          sum += (la - ell_xi) * std::log1p(w) + (lb - la) * phi_r(w);
        }
      } else {
        const cplx w = (b - a) / (a - xi);
        sum += la * log1p_c(w) + (lb - la) * phi_c(w);
      }
      k = j;
    }
    if (real_axis) {
      const double X = x_.back(), xr = xi.real();
      sum += ell_xi * (std::log((X - xr) / (X + xr)) + kI * kPi);
    }
    return sum + tail(xi);
  };
  return {sweep(1), sweep(2)};
}

cplx Factorization::log_plus_real(double xi) const {
  const cplx l = ell_interp(xi);
  return cauchy(xi, true, l).value / (2.0 * kPi * kI);
}

cplx Factorization::log_minus_real(double xi) const {
  const cplx l = ell_interp(xi);
  return l - cauchy(xi, true, l).value / (2.0 * kPi * kI);
}

cplx Factorization::log_plus(cplx xi) const {
  if (xi.imag() < 0.0) throw DomainError("L+ is evaluated on or above the real axis only");
  if (xi.imag() == 0.0) return log_plus_real(xi.real());
  return cauchy(xi, false, 0.0).value / (2.0 * kPi * kI);
}

cplx Factorization::log_minus(cplx xi) const {
  if (xi.imag() > 0.0) throw DomainError("L- is evaluated on or below the real axis only");
  if (xi.imag() == 0.0) return log_minus_real(xi.real());
  return -cauchy(xi, false, 0.0).value / (2.0 * kPi * kI);
}

cplx Factorization::minus_over_plus(double xi) const {
  const cplx l = ell_interp(xi);
  const cplx jp = cauchy(xi, true, l).value / (2.0 * kPi * kI);
  return std::exp(l - 2.0 * jp);
}

double Factorization::offaxis_residual(double xi, double delta) const {
  const cplx prod = std::exp(log_plus(cplx(xi, delta)) + log_minus(cplx(xi, -delta)));
  const cplx L = detail::evaluate(xi, profile_.eps_at(std::abs(xi)), params_).L;
  return std::abs(prod - L) / std::abs(L);
}

void Factorization::near_jump_warning(double xi, std::vector<std::string>& w) const {
  for (const Jump& j : profile_.jumps)
    if (std::abs(std::abs(xi) - j.xi) < 10.0 * profile_.base_step)
      w.push_back(fmt::format("xi={} lies within 10 grid steps of a phase jump at {}", xi, j.xi));
}

FactorizationResult Factorization::at(cplx xi) const {
  FactorizationResult r;
  r.xi = xi;
  if (std::abs(xi.real()) >= x_.back() && xi.imag() == 0.0)
    throw DomainError(fmt::format("xi={} outside the factorization window", xi.real()));
  near_jump_warning(xi.real(), r.warnings);
  const cplx twopii = 2.0 * kPi * kI;
  if (xi.imag() == 0.0) {
    const cplx l = ell_interp(xi.real());
    const Cauchy c = cauchy(xi, true, l);
    r.L_plus = std::exp(c.value / twopii);
    r.L_minus = std::exp(l - c.value / twopii);
    const cplx L = detail::evaluate(xi.real(), profile_.eps_at(std::abs(xi.real())), params_).L;
    r.residual = std::abs(*r.L_plus * *r.L_minus - L) / std::abs(L);
    r.quadrature_error = std::abs(c.value - c.coarse) / (2.0 * kPi);
  } else {
    const Cauchy c = cauchy(xi, false, 0.0);
    if (xi.imag() > 0.0)
      r.L_plus = std::exp(c.value / twopii);
    else
      r.L_minus = std::exp(-c.value / twopii);
    r.residual = std::nan("");
    r.quadrature_error = std::abs(c.value - c.coarse) / (2.0 * kPi);
  }
  return r;
}

FactorizationResult factorize_at(cplx xi, const PhaseProfile& profile, const LatticeParams& p) {
  return Factorization(profile, p).at(xi);
}

PointLoadSolution::PointLoadSolution(std::shared_ptr<const Factorization> f, cplx C)
    : f_(std::move(f)), C_(C) {}

cplx PointLoadSolution::S_plus(cplx xi) const {
  if (C_ == 0.0) return 0.0;
  const double e = f_->profile().eps_at(std::abs(xi.real()));
  return C_ / (std::exp(f_->log_plus(xi)) * (e - kI * xi));
}

cplx PointLoadSolution::S_minus(cplx xi) const {
  if (C_ == 0.0) return 0.0;
  const double e = f_->profile().eps_at(std::abs(xi.real()));
  return std::exp(f_->log_minus(xi)) * C_ / (e + kI * xi);
}

double PointLoadSolution::energy_release_limit() const {
  // ln(L-/L+) is averaged over +/- delta, which removes the odd part, and
  // extrapolated linearly to delta = 0.
  auto mean_log = [&](double d) {
    return 0.5 * (std::log(f_->minus_over_plus(d)) + std::log(f_->minus_over_plus(-d))).real();
  };
  const double d = 1e-3;
  const double extrap = 2.0 * mean_log(d) - mean_log(2.0 * d);
  return std::norm(C_) * std::exp(extrap);
}

PointLoadSolution solve_point_load(const LatticeParams& p, const PhaseProfile& profile, cplx C) {
  return PointLoadSolution(std::make_shared<const Factorization>(profile, p), C);
}

GeneralLoadSolution::GeneralLoadSolution(std::shared_ptr<const Factorization> f, LoadSpec load,
                                         double eps)
    : f_(std::move(f)), load_(std::move(load)), eps_(eps) {}

cplx GeneralLoadSolution::sum_plus(cplx xi) const {
  cplx s = 0.0;
  for (const LoadTerm& t : load_.terms) s += t.coefficient / (eps_ - kI * (xi - t.xi0));
  return s;
}

cplx GeneralLoadSolution::sum_minus(cplx xi) const {
  cplx s = 0.0;
  for (const LoadTerm& t : load_.terms) s += t.coefficient / (eps_ + kI * (xi - t.xi0));
  return s;
}

cplx GeneralLoadSolution::S_plus(cplx xi) const {
  if (load_.terms.empty()) return 0.0;
  return sum_plus(xi) / std::exp(f_->log_plus(xi));
}

cplx GeneralLoadSolution::S_minus(cplx xi) const {
  if (load_.terms.empty()) return 0.0;
  return std::exp(f_->log_minus(xi)) * sum_minus(xi);
}

cplx GeneralLoadSolution::right_hand_side(double xi) const {
  if (load_.terms.empty()) return 0.0;
  return std::exp(f_->log_plus_real(xi)) * S_plus(xi) +
         S_minus(xi) / std::exp(f_->log_minus_real(xi));
}

double measure_exponent(const Factorization& f, double xi0, LoadTermKind kind) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (int k = 0; k <= 6; ++k) {
    const double d = std::pow(10.0, -3.5 + 0.25 * k);
    double y = 0.0;
    for (double side : {-1.0, 1.0}) {
      const cplx l = kind == LoadTermKind::pole ? f.log_plus_real(xi0 + side * d)
                                                : f.log_minus_real(xi0 + side * d);
      y += 0.5 * l.real();
    }
    const double x = std::log(d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return kind == LoadTermKind::pole ? -slope : slope;
}

GeneralLoadSolution solve_general_load(const LatticeParams& p, const PhaseProfile& profile,
                                       const CrossingSet& crossings, LoadSpec load) {
  auto f = std::make_shared<const Factorization>(profile, p);
  for (LoadTerm& t : load.terms) {
    const auto it = std::find_if(crossings.items.begin(), crossings.items.end(), [&](const Crossing& c) {
      return std::abs(c.xi_star - t.xi0) <= 1e-8 * std::max(1.0, std::abs(t.xi0));
    });
    const bool ok =
        it != crossings.items.end() &&
        (t.kind == LoadTermKind::pole
             ? (it->kind == CrossingKind::pole && it->half_plane == HalfPlane::lower)
             : (it->kind == CrossingKind::root && it->half_plane == HalfPlane::upper));
    if (!ok)
      throw InvalidLoadError(fmt::format(
          "load term at xi={} is not anchored to a {} crossing", t.xi0,
          t.kind == LoadTermKind::pole ? "lower half-plane pole" : "upper half-plane zero"));
    if (!(t.exponent > 0.0)) t.exponent = measure_exponent(*f, t.xi0, t.kind);
  }
  return GeneralLoadSolution(f, std::move(load), p.eps);
}

cplx load_phi_A(double eta, double eps, double zeta, double xi_p, double a, cplx CA) {
  if (eta >= 0.0) return 0.0;
  return -CA * std::pow(2.0 * zeta * eps, a) * std::exp(cplx(zeta * eps, -xi_p) * eta);
}

cplx load_phi_B(double eta, double eps, double zeta, double xi_z, double b, cplx CB) {
  if (eta <= 0.0) return 0.0;
  return CB * std::pow(2.0 * zeta * eps, b) * std::exp(-cplx(zeta * eps, xi_z) * eta);
}

}  // namespace latfrak
