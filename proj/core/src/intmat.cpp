#include "gerbelab/intmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace gerbelab {

namespace detail {

long long checked_add(long long x, long long y) {
  long long r;
  if (__builtin_add_overflow(x, y, &r))
    throw std::overflow_error("integer overflow in Smith reduction");
  return r;
}

long long checked_mul(long long x, long long y) {
  long long r;
  if (__builtin_mul_overflow(x, y, &r))
    throw std::overflow_error("integer overflow in Smith reduction");
  return r;
}

}  // namespace detail

using detail::checked_add;
using detail::checked_mul;

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& rhs) const {
  if (cols != rhs.rows) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      long long v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < rhs.cols; ++j)
        out.at(i, j) = checked_add(out.at(i, j), checked_mul(v, rhs.at(k, j)));
    }
  return out;
}

std::vector<long long> IntMatrix::apply(std::span<const long long> v) const {
  if (static_cast<int>(v.size()) != cols)
    throw std::invalid_argument("matrix apply: size mismatch");
  std::vector<long long> out(rows, 0);
  for (int i = 0; i < rows; ++i) {
    long long acc = 0;
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != 0) acc = checked_add(acc, checked_mul(at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

std::vector<double> IntMatrix::apply(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != cols)
    throw std::invalid_argument("matrix apply: size mismatch");
  std::vector<double> out(rows, 0.0);
  for (int i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != 0) acc += static_cast<double>(at(i, j)) * v[j];
    out[i] = acc;
  }
  return out;
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

template <typename T>
T scalar_add(T x, T y);
template <typename T>
T scalar_mul(T x, T y);

template <>
long long scalar_add(long long x, long long y) { return checked_add(x, y); }
template <>
long long scalar_mul(long long x, long long y) { return checked_mul(x, y); }
template <>
BigInt scalar_add(BigInt x, BigInt y) { return x + y; }
template <>
BigInt scalar_mul(BigInt x, BigInt y) { return x * y; }

template <typename T>
struct Grid {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Grid() = default;
  Grid(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, T(0)) {}
  T& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Grid identity(int n) {
    Grid g(n, n);
    for (int i = 0; i < n; ++i) g.at(i, i) = T(1);
    return g;
  }
};

// Row/column operations applied to D while mirroring them into the witness
// matrices, keeping U*A*V = D, U*u_inv = I and V*v_inv = I at every step.
template <typename T>
struct Reduction {
  Grid<T> D;
  Grid<T> U, Uinv, V, Vinv;
  bool witnesses;
  int n, m;

  Reduction(const IntMatrix& A, bool with_witnesses)
      : D(A.rows, A.cols), witnesses(with_witnesses), n(A.rows), m(A.cols) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) D.at(i, j) = T(A.at(i, j));
    if (witnesses) {
      U = Grid<T>::identity(n);
      Uinv = Grid<T>::identity(n);
      V = Grid<T>::identity(m);
      Vinv = Grid<T>::identity(m);
    }
  }

  void swap_rows(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < m; ++j) std::swap(D.at(i, j), D.at(k, j));
    if (!witnesses) return;
    for (int j = 0; j < n; ++j) std::swap(U.at(i, j), U.at(k, j));
    for (int r = 0; r < n; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, k));
  }

  void swap_cols(int j, int l) {
    if (j == l) return;
    for (int i = 0; i < n; ++i) std::swap(D.at(i, j), D.at(i, l));
    if (!witnesses) return;
    for (int i = 0; i < m; ++i) std::swap(V.at(i, j), V.at(i, l));
    for (int c = 0; c < m; ++c) std::swap(Vinv.at(j, c), Vinv.at(l, c));
  }

  void negate_row(int i) {
    for (int j = 0; j < m; ++j) D.at(i, j) = -D.at(i, j);
    if (!witnesses) return;
    for (int j = 0; j < n; ++j) U.at(i, j) = -U.at(i, j);
    for (int r = 0; r < n; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
  }

  // row_i -= q * row_k
  void add_row(int i, int k, const T& q) {
    if (q == 0) return;
    for (int j = 0; j < m; ++j)
      if (D.at(k, j) != 0)
        D.at(i, j) = scalar_add<T>(D.at(i, j), scalar_mul<T>(-q, D.at(k, j)));
    if (!witnesses) return;
    for (int j = 0; j < n; ++j)
      if (U.at(k, j) != 0)
        U.at(i, j) = scalar_add<T>(U.at(i, j), scalar_mul<T>(-q, U.at(k, j)));
    for (int r = 0; r < n; ++r)
      if (Uinv.at(r, i) != 0)
        Uinv.at(r, k) = scalar_add<T>(Uinv.at(r, k), scalar_mul<T>(q, Uinv.at(r, i)));
  }

  // col_j -= q * col_l
  void add_col(int j, int l, const T& q) {
    if (q == 0) return;
    for (int i = 0; i < n; ++i)
      if (D.at(i, l) != 0)
        D.at(i, j) = scalar_add<T>(D.at(i, j), scalar_mul<T>(-q, D.at(i, l)));
    if (!witnesses) return;
    for (int i = 0; i < m; ++i)
      if (V.at(i, l) != 0)
        V.at(i, j) = scalar_add<T>(V.at(i, j), scalar_mul<T>(-q, V.at(i, l)));
    for (int c = 0; c < m; ++c)
      if (Vinv.at(j, c) != 0)
        Vinv.at(l, c) = scalar_add<T>(Vinv.at(l, c), scalar_mul<T>(q, Vinv.at(j, c)));
  }
};

template <typename T>
T abs_of(const T& v) {
  return v < 0 ? T(-v) : v;
}

// Reduce with globally minimal pivots, re-selected after every remainder
// sweep.  Remainders stay in place and become the next pivot, which keeps
// the elimination quotients (and so the entry growth) small.
template <typename T>
void reduce(Reduction<T>& red) {
  const int n = red.n, m = red.m;
  const int steps = std::min(n, m);

  for (int t = 0; t < steps; ++t) {
    while (true) {
      // smallest nonzero entry of the working submatrix, early exit on units
      int pi = -1, pj = -1;
      T best(0);
      for (int i = t; i < n && best != 1; ++i)
        for (int j = t; j < m; ++j) {
          T v = abs_of(red.D.at(i, j));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
            if (best == 1) break;
          }
        }
      if (pi < 0) return;  // the whole remaining submatrix is zero
      red.swap_rows(t, pi);
      red.swap_cols(t, pj);
      const T p = red.D.at(t, t);

      // one remainder sweep down the column and across the row
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        T v = red.D.at(i, t);
        if (v == 0) continue;
        red.add_row(i, t, T(v / p));
        if (red.D.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < m; ++j) {
        T v = red.D.at(t, j);
        if (v == 0) continue;
        red.add_col(j, t, T(v / p));
        if (red.D.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // some remainder is now strictly smaller than p

      if (p == 1 || p == -1) break;
      // divisibility sweep: fold in a row the pivot does not divide; the
      // next sweep shrinks the pivot to a proper divisor
      int bi = -1;
      for (int i = t + 1; i < n && bi < 0; ++i)
        for (int j = t + 1; j < m; ++j)
          if (red.D.at(i, j) % p != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      red.add_row(t, bi, T(-1));  // row_t += row_bi
    }
    if (red.D.at(t, t) < 0) red.negate_row(t);
  }
}

long long narrow(const long long& v) { return v; }

long long narrow(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min())
    throw std::overflow_error("Smith normal form witness exceeds 64-bit range");
  return static_cast<long long>(v);
}

template <typename T>
IntMatrix to_matrix(const Grid<T>& g) {
  IntMatrix out(g.rows, g.cols);
  for (std::size_t i = 0; i < g.a.size(); ++i) out.a[i] = narrow(g.a[i]);
  return out;
}

template <typename T>
SnfResult run_snf(const IntMatrix& A, bool with_witnesses) {
  Reduction<T> red(A, with_witnesses);
  reduce(red);
  SnfResult out;
  for (int t = 0; t < std::min(A.rows, A.cols); ++t) {
    if (red.D.at(t, t) == 0) break;
    out.diagonal.push_back(narrow(red.D.at(t, t)));
  }
  out.D = to_matrix(red.D);
  if (with_witnesses) {
    out.U = to_matrix(red.U);
    out.u_inv = to_matrix(red.Uinv);
    out.V = to_matrix(red.V);
    out.v_inv = to_matrix(red.Vinv);
  }
  return out;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& A, bool with_witnesses) {
  // 64-bit with checked arithmetic first; genuine intermediate blow-up
  // falls back to arbitrary precision
  try {
    return run_snf<long long>(A, with_witnesses);
  } catch (const std::overflow_error&) {
    return run_snf<BigInt>(A, with_witnesses);
  }
}

std::optional<std::vector<long long>> solve_integer(const SnfResult& snf,
                                                    std::span<const long long> b) {
  const int n = snf.U.rows, m = snf.V.rows;
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve_integer: rhs size mismatch");
  std::vector<long long> c = snf.U.apply(b);
  const int r = snf.rank();
  std::vector<long long> y(m, 0);
  for (int i = 0; i < n; ++i) {
    if (i < r) {
      if (c[i] % snf.diagonal[i] != 0) return std::nullopt;
      if (i < m) y[i] = c[i] / snf.diagonal[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V.apply(std::span<const long long>(y));
}

std::optional<std::vector<double>> solve_rational(const SnfResult& snf,
                                                  std::span<const double> b,
                                                  double tol) {
  const int n = snf.U.rows, m = snf.V.rows;
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve_rational: rhs size mismatch");
  std::vector<double> c = snf.U.apply(b);
  const int r = snf.rank();
  std::vector<double> y(m, 0.0);
  for (int i = 0; i < n; ++i) {
    if (i < r) {
      if (i < m) y[i] = c[i] / static_cast<double>(snf.diagonal[i]);
    } else if (std::abs(c[i]) > tol) {
      return std::nullopt;
    }
  }
  return snf.V.apply(std::span<const double>(y));
}

}  // namespace gerbelab
