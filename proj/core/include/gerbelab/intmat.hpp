#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gerbelab {

/// Dense integer matrix, row major.  Entries are int64; Smith reduction
/// computes through checked 128-bit intermediates and reports overflow
/// rather than wrapping.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<long long> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  long long& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  long long at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static IntMatrix identity(int n);
  IntMatrix multiply(const IntMatrix& rhs) const;  // checked arithmetic
  std::vector<long long> apply(std::span<const long long> v) const;
  std::vector<double> apply(std::span<const double> v) const;
};

/// U * A * V = D with U, V unimodular and positive diagonal entries in a
/// divisibility chain.  `diagonal` lists only the nonzero invariant
/// factors, so its length is rank(A).  u_inv and v_inv are maintained
/// alongside so that cocycle classes can be read off without a separate
/// inversion.
struct SnfResult {
  IntMatrix U, D, V;
  IntMatrix u_inv, v_inv;
  std::vector<long long> diagonal;

  int rank() const { return static_cast<int>(diagonal.size()); }
};

/// Smallest-pivot Smith normal form.  with_witnesses=false skips U/V
/// bookkeeping (diagonal only).  Throws std::overflow_error if any
/// intermediate leaves the int64 range.
SnfResult smith_normal_form(const IntMatrix& A, bool with_witnesses = true);

/// Solve A x = b over the integers via a precomputed SNF.  nullopt if
/// unsolvable.
std::optional<std::vector<long long>> solve_integer(const SnfResult& snf,
                                                    std::span<const long long> b);

/// Solve A x = b over the rationals (result as doubles).  nullopt if b is
/// not in the rational column span.
std::optional<std::vector<double>> solve_rational(const SnfResult& snf,
                                                  std::span<const double> b,
                                                  double tol = 1e-9);

namespace detail {
long long checked_add(long long x, long long y);
long long checked_mul(long long x, long long y);
}  // namespace detail

}  // namespace gerbelab
