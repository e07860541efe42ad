#pragma once

#include <array>
#include <string>
#include <vector>

#include "latfrak/lattice.hpp"

namespace latfrak {

enum class Branch { N1, N2, N3, N4, D1, D2, D3 };
enum class BranchRole { root, pole, removable, conditional_pole };

inline constexpr std::array<Branch, 7> kAllBranches = {Branch::N1, Branch::N2, Branch::N3,
                                                       Branch::N4, Branch::D1, Branch::D2,
                                                       Branch::D3};

std::string to_string(Branch b);
BranchRole branch_role(Branch b);

double branch_value(Branch b, double xi, const LatticeParams& p);

struct GroupVelocity {
  double value = 0.0;
  bool one_sided = false;  // xi sits on a kink; value is the right derivative
};

GroupVelocity group_velocity(Branch b, double xi, const LatticeParams& p);

// Largest value any branch attains (over a period).
double branch_maximum(const LatticeParams& p);

// How pole activity is decided.
//  limit:    q evaluated at eps -> 0+ (small positive eps); used for classification.
//  spectrum: q evaluated at eps = 0 with r = +1 on the unit circle.
enum class ActivityRule { limit, spectrum };

struct PoleActivity {
  bool active = false;
  bool boundary = false;
  double q_rel = 1.0;
  int r_ratio_sign = 1;
};

PoleActivity pole_active(Branch b, double xi, const LatticeParams& p,
                         ActivityRule rule = ActivityRule::limit);

enum class CrossingKind { root, pole, removable, inactive_pole };
enum class HalfPlane { upper, lower, none };

std::string to_string(CrossingKind k);
std::string to_string(HalfPlane h);

struct Crossing {
  double xi_star = 0.0;
  Branch branch = Branch::N1;
  CrossingKind kind = CrossingKind::root;
  HalfPlane half_plane = HalfPlane::none;
  double vg = 0.0;
  bool tangential = false;
};

struct CrossingOptions {
  double xi_max = 0.0;               // 0 selects the default window
  int points_per_period = 10000;     // per 4 pi
  double tangency_tol = 1e-8;
};

struct CrossingSet {
  std::vector<Crossing> items;
  std::vector<std::string> warnings;
  double xi_max = 0.0;
};

// Default search window: 40 pi, extended when slow rays meet branches later.
double default_xi_max(const LatticeParams& p);

CrossingSet crossings(const LatticeParams& p, const CrossingOptions& opt = {});

// Sign changes of the radical inside z_j along the ray at eps = 0. Where the
// difference z2 - z1 turns between imaginary and real, arg L steps by pi/2.
std::vector<double> radical_transitions(const LatticeParams& p, double xi_max = 0.0,
                                        int points_per_period = 10000);

}  // namespace latfrak
