// Test-only oracles, kept independent of the library's computation paths:
// exact rational linear algebra through boost::multiprecision, and
// brute-force enumeration against dense circle sampling.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <bitset>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "gerbelab/covers.hpp"
#include "gerbelab/intmat.hpp"

namespace oracles {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::rational<BigInt>;

// rank over Q by fraction-free Bareiss elimination, exact
inline int rational_rank(const gerbelab::IntMatrix& m) {
  std::vector<std::vector<BigInt>> a(m.rows, std::vector<BigInt>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) a[i][j] = m.at(i, j);
  BigInt prev = 1;
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i)
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int i = rank + 1; i < m.rows; ++i) {
      for (int j = col + 1; j < m.cols; ++j)
        a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

// exact product of two integer matrices as big integers
inline std::vector<std::vector<BigInt>> exact_product(const gerbelab::IntMatrix& x,
                                                      const gerbelab::IntMatrix& y) {
  std::vector<std::vector<BigInt>> out(x.rows, std::vector<BigInt>(y.cols));
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k)
      if (x.at(i, k) != 0)
        for (int j = 0; j < y.cols; ++j)
          out[i][j] += BigInt(x.at(i, k)) * y.at(k, j);
  return out;
}

// exact product U * A * V as big integers
inline std::vector<std::vector<BigInt>> exact_uav(const gerbelab::IntMatrix& u,
                                                  const gerbelab::IntMatrix& a,
                                                  const gerbelab::IntMatrix& v) {
  auto lift = [](const gerbelab::IntMatrix& m) {
    std::vector<std::vector<BigInt>> out(m.rows, std::vector<BigInt>(m.cols));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) out[i][j] = m.at(i, j);
    return out;
  };
  auto mul = [](const std::vector<std::vector<BigInt>>& x,
                const std::vector<std::vector<BigInt>>& y) {
    std::vector<std::vector<BigInt>> out(x.size(), std::vector<BigInt>(y[0].size()));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t k = 0; k < y.size(); ++k)
        if (x[i][k] != 0)
          for (std::size_t j = 0; j < y[0].size(); ++j) out[i][j] += x[i][k] * y[k][j];
    return out;
  };
  return mul(mul(lift(u), lift(a)), lift(v));
}

inline BigInt exact_determinant(const gerbelab::IntMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant: square only");
  std::vector<std::vector<BigInt>> a(m.rows, std::vector<BigInt>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) a[i][j] = m.at(i, j);
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < m.rows - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < m.rows; ++i)
        if (a[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < m.rows; ++i)
      for (int j = k + 1; j < m.cols; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[m.rows - 1][m.cols - 1];
}

// exact rational solve of A x = b; nullopt when unsolvable over Q
inline std::optional<std::vector<BigRat>> rational_solve(
    const gerbelab::IntMatrix& m, const std::vector<long long>& b) {
  const int rows = m.rows, cols = m.cols;
  std::vector<std::vector<BigRat>> a(rows, std::vector<BigRat>(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a[i][j] = BigRat(BigInt(m.at(i, j)));
    a[i][cols] = BigRat(BigInt(b[i]));
  }
  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != BigRat(0)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    BigRat inv = a[rank][col];
    for (int j = col; j <= cols; ++j) a[rank][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == BigRat(0)) continue;
      BigRat f = a[i][col];
      for (int j = col; j <= cols; ++j) a[i][j] -= f * a[rank][j];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (int i = rank; i < rows; ++i)
    if (a[i][cols] != BigRat(0)) return std::nullopt;
  std::vector<BigRat> x(cols, BigRat(0));
  for (int i = 0; i < rank; ++i) x[pivot_col[i]] = a[i][cols];
  return x;
}

// dense circle sampling: membership of arc representatives, used to decide
// overlaps without the library's interval arithmetic
class SampledCircle {
 public:
  static constexpr int kSamples = 20000;

  static std::bitset<kSamples> arc_mask(const gerbelab::Arc& arc) {
    std::bitset<kSamples> mask;
    for (int s = 0; s < kSamples; ++s) {
      double t = (s + 0.5) / kSamples;
      double rel = t - arc.lo;
      rel -= std::floor(rel);
      if (rel < arc.len) mask.set(s);
    }
    return mask;
  }
};

// brute-force nerve of an arc-product cover by dense sampling, enumerating
// every subset of size <= max_degree + 1
inline std::vector<std::vector<std::vector<int>>> brute_force_arc_nerve(
    const gerbelab::ArcProduct& cover, int max_degree) {
  const int count = cover.index_count();
  std::vector<std::vector<std::bitset<SampledCircle::kSamples>>> masks(count);
  for (int i = 0; i < count; ++i)
    for (const gerbelab::Arc& arc : cover.box(i))
      masks[i].push_back(SampledCircle::arc_mask(arc));

  auto overlaps = [&](const std::vector<int>& subset) {
    for (int c = 0; c < cover.dimension; ++c) {
      std::bitset<SampledCircle::kSamples> acc = masks[subset[0]][c];
      for (std::size_t k = 1; k < subset.size(); ++k) acc &= masks[subset[k]][c];
      if (acc.none()) return false;
    }
    return true;
  };

  std::vector<std::vector<std::vector<int>>> levels(max_degree + 1);
  std::vector<int> subset;
  std::function<void(int, int)> rec = [&](int start, int remaining) {
    if (!subset.empty()) {
      if (overlaps(subset))
        levels[subset.size() - 1].push_back(subset);
      else
        return;  // supersets of an empty intersection stay empty
    }
    if (remaining == 0) return;
    for (int v = start; v < count; ++v) {
      subset.push_back(v);
      rec(v + 1, remaining - 1);
      subset.pop_back();
    }
  };
  rec(0, max_degree + 1);
  return levels;
}

}  // namespace oracles
