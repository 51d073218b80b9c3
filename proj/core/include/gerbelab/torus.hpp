#pragma once

#include <array>
#include <vector>

#include "gerbelab/gerbe.hpp"

namespace gerbelab::torus {

/// Point of Y = R^3, projecting to T^3 by reduction mod 1.
struct TorusPoint {
  std::array<double, 3> x{0.0, 0.0, 0.0};
};

/// Point of a fibre power Y^[p]: 2 to 4 lifts of one base point, so all
/// pairwise differences are integer vectors (checked within 1e-9).
struct FiberTuple {
  std::vector<TorusPoint> points;

  void validate() const;
};

/// Differential form on the torus coordinates with constant coefficients in
/// the theta basis: one coefficient per increasing multi-index over {1,2,3}.
struct LatticeForm {
  int degree = 0;
  std::vector<double> comps;  // size C(3, degree)

  static LatticeForm zero(int degree);
  double max_abs() const;
};

/// gamma(x, y, z) = (y1 - z1)(x2 - y2) x3.
double gamma(const FiberTuple& t);

/// Closed form of the coboundary in the consecutive differences:
/// (w-z)^1 (z-y)^2 (y-x)^3, a product of integers on Y^[4].
double gamma_closed_form(const FiberTuple& t);

/// Alternating sum of gamma over the four faces of a Y^[4] tuple.  Checks
/// that it matches the closed form within 1e-9 and is an integer within
/// 1e-9; either failing throws std::logic_error.
double delta_gamma(const FiberTuple& t);

/// Connection one-form at (x, y), normalized by 1/(2 pi i):
/// -(x1 - y1) x2 theta3.
LatticeForm connection_a(const FiberTuple& t);

/// Residual of delta(A) = d(gamma) at a Y^[3] tuple.
double check_connection(const FiberTuple& t);

/// Curving two-form at x, normalized: x1 theta2 ^ theta3.
LatticeForm curving_f(const TorusPoint& p);

/// Residual of delta(f) = dA at a Y^[2] tuple.
double check_curving(const FiberTuple& t);

/// The three-curvature omega (normalized): theta1 ^ theta2 ^ theta3 with
/// unit coefficient; integral over T^3 by the midpoint rule on an N^3 grid.
LatticeForm three_curvature();
double integrate_three_curvature(int grid, double scale = 1.0);

/// Residual of df = pullback of omega at a point.
double check_df(const TorusPoint& p);

/// Integer section offsets of the box cover: offset[coordinate] of the
/// pair (alpha, beta) is s_beta - s_alpha on the overlap.
std::array<long long, 3> section_offset(const ArcProduct& cover, int alpha, int beta);

/// Common point of a set of boxes, one coordinate midpoint per axis.
TorusPoint overlap_midpoint(const ArcProduct& cover, const std::vector<int>& boxes);

/// Canonical lift of a base point into a box's representative intervals.
TorusPoint section(const ArcProduct& cover, int box, const TorusPoint& base);

/// The Cech presentation of the gerbe on the product-arc cover: sampled
/// circle values gamma(s_a, s_b, s_c) mod 1 at overlap midpoints, and the
/// integral winding 3-cocycle read off the section offsets through the
/// closed form of delta(gamma).  Rejects covers whose section offsets fail
/// the cocycle condition (boxes too large).
CechGerbe cech_cocycle(int resolution, double margin = -1.0);

/// The cover used by cech_cocycle for a given resolution.
ArcProduct box_cover(int resolution, double margin = -1.0);

}  // namespace gerbelab::torus
