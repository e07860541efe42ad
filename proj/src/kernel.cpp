#include "latfrak/kernel.hpp"

#include <cmath>
#include <fmt/format.h>
#include <Eigen/LU>

#include "latfrak/dispersion.hpp"
#include "latfrak/error.hpp"

namespace latfrak {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSpectrumTol = 1e-12;
constexpr double kPoleTol = 1e-14;
constexpr double kRemovableWindow = 1e-6;

struct Trig {
  double s, c;
  explicit Trig(double xi) : s(std::sin(0.5 * xi)), c(std::cos(0.5 * xi)) {}
};

// Offsets u_j = z_j - 1. Near xi = 0 the roots approach 1 and every factor
// below is formed from u and sin^2(xi/4) so that no O(1) cancellation occurs.
std::pair<cplx, cplx> offsets_u(double xi, cplx Y, const LatticeParams& p) {
  const Trig t(xi);
  const double a = p.alpha;
  const double s2 = t.s * t.s;
  const double q4 = std::sin(0.25 * xi);
  const double cm1 = -2.0 * q4 * q4;  // cos(xi/2) - 1
  const cplx Am1 = cm1 + (2.0 * a * s2 + 2.0 * Y / 3.0) * t.c;
  const cplx q = a * s2 + Y / 3.0;
  const cplx R = Y * Y / 9.0 - 4.0 * s2 * q * (q + 1.0 - a);
  const cplx root = std::sqrt(R);
  return {Am1 - root, Am1 + root};
}

cplx F_of_u(cplx u, double xi, cplx Y, const LatticeParams& p) {
  const Trig t(xi);
  const double q4 = std::sin(0.25 * xi);
  const double omc = 2.0 * q4 * q4;  // 1 - cos(xi/2)
  const cplx cz = -omc - u;          // cos(xi/2) - z
  return 3.0 * cz * cz - 6.0 * p.alpha * t.s * t.s * (1.0 + t.c) * u +
         Y * (omc - u * t.c - (1.0 + t.c) * u);
}

cplx F_of(cplx z, double xi, cplx Y, const LatticeParams& p) { return F_of_u(z - 1.0, xi, Y, p); }

// Within the window around a removable point the multiplied-out quotient is used.
bool near_removable(double xi, const LatticeParams& p) {
  for (Branch b : {Branch::N3, Branch::N4}) {
    const double gap = branch_value(b, xi, p) - xi * p.V;
    const double slope = std::abs(group_velocity(b, xi, p).value - p.V);
    if (std::abs(gap) < kRemovableWindow * std::max(slope, 1e-300)) return true;
  }
  return false;
}

}  // namespace

cplx y_param(double xi, double eps, const LatticeParams& p) {
  const cplx w(eps, xi * p.V);
  return p.m * w * w / p.mu2;
}

namespace detail {

void select_root_u(cplx u, Tie tie, cplx& lam, cplx& rho, int& r, bool& on_spectrum) {
  const cplx z = 1.0 + u;
  const cplx S = std::sqrt(u * (u + 2.0));
  const double mod = std::abs(z - S);
  on_spectrum = false;
  if (std::abs(mod - 1.0) <= kSpectrumTol) {
    on_spectrum = true;
    r = (tie == Tie::plus || mod <= 1.0) ? 1 : -1;
  } else {
    r = mod <= 1.0 ? 1 : -1;
  }
  rho = double(r) * S;
  // Lambda (z + rS) = 1; dividing avoids cancellation when |z| is large.
  lam = 1.0 / (z + rho);
}

void select_root(cplx z, Tie tie, cplx& lam, cplx& rho, int& r, bool& on_spectrum) {
  select_root_u(z - 1.0, tie, lam, rho, r, on_spectrum);
}

KernelSample evaluate(double xi, double eps, const LatticeParams& p, Tie tie, bool check_pole) {
  KernelSample s;
  s.xi = xi;
  const cplx Y = y_param(xi, eps, p);
  const auto [u1, u2] = offsets_u(xi, Y, p);
  s.z1 = 1.0 + u1;
  s.z2 = 1.0 + u2;
  bool on1 = false, on2 = false;
  select_root_u(u1, tie, s.lam1, s.rho1, s.r1, on1);
  select_root_u(u2, tie, s.lam2, s.rho2, s.r2, on2);
  const cplx rho1 = s.rho1, rho2 = s.rho2;
  s.F1 = F_of_u(u1, xi, Y, p);
  s.F2 = F_of_u(u2, xi, Y, p);
  const cplx t1 = s.F2 * rho1;
  const cplx t2 = s.F1 * rho2;
  const cplx num = 3.0 * (u2 - u1) * rho1 * rho2;
  const cplx den = t1 - t2;
  const bool removable = near_removable(xi, p);
  if (check_pole && !removable && std::abs(den) < kPoleTol * (std::abs(t1) + std::abs(t2)))
    throw PoleProximityError(fmt::format("kernel denominator vanishes at xi={}", xi), xi);
  if (removable) {
    // rho_j^2 = z_j^2 - 1 removes the square roots from the denominator.
    const cplx den_ext =
        s.F2 * s.F2 * (u1 * (u1 + 2.0)) - s.F1 * s.F1 * (u2 * (u2 + 2.0));
    s.L = num * (t1 + t2) / den_ext;
    s.extended_form = true;
  } else {
    s.L = num / den;
  }
  return s;
}

double denominator_cancellation(const KernelSample& s) {
  const cplx t1 = s.F2 * s.rho1;
  const cplx t2 = s.F1 * s.rho2;
  const double scale = std::abs(t1) + std::abs(t2);
  return scale > 0.0 ? std::abs(t1 - t2) / scale : 0.0;
}

}  // namespace detail

std::pair<cplx, cplx> eval_z(double xi, const LatticeParams& p) {
  p.validate(true, false);
  const auto [u1, u2] = offsets_u(xi, y_param(xi, p.eps, p), p);
  return {1.0 + u1, 1.0 + u2};
}

LambdaRoots eval_lambda(double xi, const LatticeParams& p) {
  p.validate(true, false);
  const auto [u1, u2] = offsets_u(xi, y_param(xi, p.eps, p), p);
  LambdaRoots out;
  cplx rho;
  detail::select_root_u(u1, detail::Tie::plus, out.lam1, rho, out.r1, out.on_spectrum1);
  detail::select_root_u(u2, detail::Tie::plus, out.lam2, rho, out.r2, out.on_spectrum2);
  return out;
}

cplx eval_F(cplx z, double xi, const LatticeParams& p) {
  return F_of(z, xi, y_param(xi, p.eps, p), p);
}

KernelSample eval_L_closed(double xi, const LatticeParams& p) {
  p.validate(true, false);
  return detail::evaluate(xi, p.eps, p);
}

double biquadratic_residual(cplx lam, double xi, const LatticeParams& p) {
  const Trig t(xi);
  const cplx Y = y_param(xi, p.eps, p);
  const cplx a = 1.0 + 4.0 * p.alpha * t.s * t.s + Y;
  const cplx b = 3.0 + Y;
  const cplx w2 = lam * lam + 1.0;
  const cplx k1 = 3.0 * w2 * w2;
  const cplx k2 = -2.0 * t.c * (3.0 * a + b) * lam * w2;
  const cplx k3 = (4.0 * a * b - 12.0 * t.s * t.s) * lam * lam;
  const double scale = std::abs(k1) + std::abs(k2) + std::abs(k3);
  return scale > 0.0 ? std::abs(k1 + k2 + k3) / scale : 0.0;
}

MatrixRoute matrix_route(double xi, const LatticeParams& p, bool swap) {
  p.validate(true, false);
  // The route divides by det Xi, which degenerates like xi^4 as xi -> 0, so it
  // runs in extended precision to stay useful as an independent check.
  using R = long double;
  using C = std::complex<R>;
  using M2 = Eigen::Matrix<C, 2, 2>;
  const R x = xi;
  const R s = std::sin(x / 2), c = std::cos(x / 2);
  const R sq3 = std::sqrt(R(3));
  const C Y = R(p.m) * std::pow(C(R(p.eps), x * R(p.V)), 2) / R(p.mu2);
  // w = Lambda + 1/Lambda solves 3w^2 - 2c(3a+b)w + 4ab - 12s^2 = 0.
  const C a = R(1) + R(4) * R(p.alpha) * s * s + Y;
  const C b = R(3) + Y;
  const C qb = R(-2) * c * (R(3) * a + b);
  const C qc = R(4) * a * b - R(12) * s * s;
  const C disc = std::sqrt(qb * qb - R(12) * qc);
  const C qa = std::abs(-qb + disc) >= std::abs(-qb - disc) ? R(0.5) * (-qb + disc)
                                                            : R(0.5) * (-qb - disc);
  if (qa == R(0)) throw DegenerateError(fmt::format("degenerate quadratic at xi={}", xi));
  const C w[2] = {qa / R(3), qc / qa};
  C lam[2];
  for (int j = 0; j < 2; ++j) {
    const C root = std::sqrt(w[j] * w[j] - R(4));
    const C big = std::abs(w[j] + root) >= std::abs(w[j] - root) ? R(0.5) * (w[j] + root)
                                                                 : R(0.5) * (w[j] - root);
    lam[j] = R(1) / big;
  }
  if (swap) std::swap(lam[0], lam[1]);

  auto fu = [&](C l) { return -sq3 * s * (l * l - R(1)); };
  auto fv = [&](C l) { return R(3) * (l * l + R(1)) * c - R(2) * l * (R(3) + Y); };
  const C fu1 = fu(lam[0]), fu2 = fu(lam[1]);
  const C fv1 = fv(lam[0]), fv2 = fv(lam[1]);

  M2 Xi, B, T;
  const C fuv[2][2] = {{fu1, fv1}, {fu2, fv2}};
  for (int j = 0; j < 2; ++j) {
    const int o = 1 - j;
    const C pre = lam[o] * fuv[o][1];
    const C uj = fuv[j][0], vj = fuv[j][1];
    Xi(0, j) = pre * (vj * (c - lam[j]) + sq3 * s * uj);
    Xi(1, j) = pre * (-sq3 * uj * (c - lam[j]) + s * vj);
  }
  B << fv1 * fv2, fv1 * fv2, -fu1 * fv2, -fu2 * fv1;
  T << C(1), C(0), C(0), C(sq3);
  const C e = std::polar(R(1), x / 2);
  Eigen::Matrix<C, 2, 1> Rv;
  Rv << R(1) - e, C(0, 1) * (R(1) + e);

  M2 adj;
  adj << Xi(1, 1), -Xi(0, 1), -Xi(1, 0), Xi(0, 0);
  const C det = Xi(0, 0) * Xi(1, 1) - Xi(0, 1) * Xi(1, 0);
  const R scale = std::abs(Xi(0, 0) * Xi(1, 1)) + std::abs(Xi(0, 1) * Xi(1, 0));
  if (!(std::abs(det) > R(1e-17) * scale))
    throw DegenerateError(fmt::format("matrix determinant vanishes at xi={}", xi));
  const M2 Omega = T * B * adj;
  const C quad = (Rv.transpose() * Omega * Rv.conjugate())(0, 0);
  const C L = R(1) + lam[0] * lam[1] / (R(2) * det) * quad;

  auto d = [](C z) { return cplx(double(z.real()), double(z.imag())); };
  auto dm = [&](const M2& m) {
    Eigen::Matrix2cd r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = d(m(i, j));
    return r;
  };
  MatrixRoute out;
  out.lam1 = d(lam[0]);
  out.lam2 = d(lam[1]);
  out.Xi = dm(Xi);
  out.B = dm(B);
  out.T = dm(T);
  out.Omega = dm(Omega);
  out.R << d(Rv(0)), d(Rv(1));
  out.L = d(L);
  return out;
}

cplx eval_L_matrix(double xi, const LatticeParams& p) { return matrix_route(xi, p).L; }

AsymptoticConstants asymptotic_constants(const LatticeParams& p) {
  p.validate(false, true);
  validate_subrayleigh(p);
  const double a = p.alpha;
  const double v2 = p.v_star() * p.v_star();
  AsymptoticConstants k;
  k.M0 = std::sqrt(cplx(4.0 * v2 * v2 + 3.0 * (a - 1.0) * (3.0 * a - 4.0 * v2), 0.0));
  const double base = 3.0 * (4.0 * a - 1.0) - 16.0 * v2;
  k.d1 = base - 4.0 * k.M0;
  k.d2 = base + 4.0 * k.M0;
  auto Bj = [&](double sign) {
    const cplx u = v2 - sign * k.M0;
    return 0.5 * (u * u / 6.0 - v2 * (1.5 * v2 + 1.0) - 1.5 * a * (a - 0.5 - 2.0 * v2));
  };
  k.B1 = Bj(-1.0);
  k.B2 = Bj(1.0);
  const cplx sd1 = std::sqrt(k.d1), sd2 = std::sqrt(k.d2);
  const cplx num = 3.0 * std::sqrt(k.d1 * k.d2) * (k.B2 * sd1 + k.B1 * sd2);
  const double den = 2.0 * kSqrt3 * (3.0 - 8.0 * v2) * (2.0 * v2 - 3.0 * a) *
                     (v2 * v2 - 0.5 * (2.0 * a + 1.0) * v2 + 3.0 * a / 8.0);
  if (den == 0.0)
    throw DegenerateError(fmt::format("L0 denominator vanishes at V={} (V = C_R)", p.V));
  k.L0 = (num / den).real();
  return k;
}

}  // namespace latfrak
