#pragma once

#include <complex>
#include <vector>

#include "gerbelab/rng.hpp"

namespace gerbelab::spectral {

using cplx = std::complex<double>;

/// Small dense complex matrix, row major.
struct CMat {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  cplx at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static CMat identity(int n);
  CMat adjoint() const;
  CMat multiply(const CMat& rhs) const;
  CMat columns(const std::vector<int>& which) const;
  double frobenius() const;
};

cplx determinant(CMat m);

/// Element of SU(n), n in 2..6; unitarity and det = 1 are checked on entry.
struct UnitaryPoint {
  CMat x;

  explicit UnitaryPoint(CMat m, double tol = 1e-10);
  int n() const { return x.rows; }
};

/// Point exp(2 pi i t) of Z = U(1) minus the identity, identified with
/// t in (0,1); "between" means strictly between in that interval.
struct Cut {
  double t = 0.5;
};

struct EigenBlock {
  double angle = 0.0;  // in [0,1)
  CMat basis;          // n x multiplicity, orthonormal
};

/// Eigenstructure of a unitary X through the commuting Hermitian pair
/// (X + X*)/2 and (X - X*)/(2i), each diagonalized by cyclic Jacobi
/// rotations; angles within cluster_tol are merged into one block.
/// Blocks come back sorted by angle.
std::vector<EigenBlock> eigendecompose(const UnitaryPoint& u,
                                       double cluster_tol = 1e-8);

/// Determinant line of the sum of eigenspaces with angle strictly between
/// two cuts.  The representative wedge vector lives in the C(n, dim)
/// coordinates of the exterior power over lexicographic row subsets, unit
/// norm, first nonzero coordinate real positive.
struct DetLine {
  int n = 0;
  int dim = 0;
  double cut_lo = 0.0, cut_hi = 0.0;  // defining cuts, ascending
  bool dual_flag = false;             // set when the cut pair was reversed
  CMat basis;                         // n x dim, orthonormal
  std::vector<cplx> wedge;
};

DetLine spectral_line(const UnitaryPoint& u, Cut a, Cut b,
                      double gap_tol = 1e-6, double cluster_tol = 1e-8);

struct MultiplyResult {
  DetLine line;
  cplx scalar;  // comparison against the canonical representative
};

/// Gerbe multiplication det V(a,b) x det V(b,c) -> det V(a,c) by wedge
/// concatenation, compared against the canonical line.  Cuts must chain
/// ascending.
MultiplyResult multiply(const UnitaryPoint& u, const DetLine& l1, const DetLine& l2,
                        double gap_tol = 1e-6, double cluster_tol = 1e-8);

/// Numeric residual of the gerbe axioms over a chain of 3 or 4 ascending
/// admissible cuts: dimension additivity, unit-modulus comparison scalars,
/// the associativity square (4 cuts), and the duality pairing.
double check_cocycle(const UnitaryPoint& u, const std::vector<Cut>& cuts,
                     double gap_tol = 1e-6, double cluster_tol = 1e-8);

/// Haar-ish random SU(n): Gram-Schmidt of a complex Gaussian matrix with
/// the determinant rotated to 1.
UnitaryPoint random_su(int n, Rng& rng);

/// Random ascending cuts staying gap_tol away from the spectrum of u.
std::vector<Cut> random_cuts(const UnitaryPoint& u, int count, Rng& rng,
                             double gap_tol = 1e-6);

}  // namespace gerbelab::spectral
