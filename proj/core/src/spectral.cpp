#include "gerbelab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "gerbelab/cech.hpp"  // frac / circle_dist

namespace gerbelab::spectral {

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMat CMat::adjoint() const {
  CMat out(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out.at(j, i) = std::conj(at(i, j));
  return out;
}

CMat CMat::multiply(const CMat& rhs) const {
  if (cols != rhs.rows) throw std::invalid_argument("complex matrix shape mismatch");
  CMat out(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      cplx v = at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

CMat CMat::columns(const std::vector<int>& which) const {
  CMat out(rows, static_cast<int>(which.size()));
  for (int i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < which.size(); ++j)
      out.at(i, static_cast<int>(j)) = at(i, which[j]);
  return out;
}

double CMat::frobenius() const {
  double acc = 0.0;
  for (const cplx& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

cplx determinant(CMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows;
  cplx det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m.at(i, k)) > std::abs(m.at(pivot, k))) pivot = i;
    if (std::abs(m.at(pivot, k)) == 0.0) return 0.0;
    if (pivot != k) {
      for (int j = k; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      det = -det;
    }
    det *= m.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      cplx f = m.at(i, k) / m.at(k, k);
      for (int j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return det;
}

UnitaryPoint::UnitaryPoint(CMat m, double tol) : x(std::move(m)) {
  if (x.rows != x.cols || x.rows < 2 || x.rows > 6)
    throw std::invalid_argument("UnitaryPoint: n must be 2..6");
  CMat gram = x.adjoint().multiply(x);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      cplx expect = i == j ? 1.0 : 0.0;
      if (std::abs(gram.at(i, j) - expect) > tol)
        throw std::invalid_argument("UnitaryPoint: matrix is not unitary");
    }
  if (std::abs(determinant(x) - cplx(1.0)) > 10 * tol)
    throw std::invalid_argument("UnitaryPoint: determinant is not 1");
}

namespace {

// cyclic complex Jacobi for a Hermitian matrix; returns accumulated unitary
// q with q^* a q diagonal, eigenvalues in eig
void hermitian_jacobi(CMat a, std::vector<double>& eig, CMat& q) {
  const int n = a.rows;
  q = CMat::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int r = p + 1; r < n; ++r) off += std::norm(a.at(p, r));
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int r = p + 1; r < n; ++r) {
        cplx apr = a.at(p, r);
        double mag = std::abs(apr);
        if (mag < 1e-18) continue;
        cplx phase = apr / mag;
        double app = a.at(p, p).real(), arr = a.at(r, r).real();
        double tau = (arr - app) / (2.0 * mag);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // columns p, r of A and Q: v_p' = c v_p - s conj(phase) v_r,
        // v_r' = s phase v_p + c v_r  (acts on the right as A <- A J, then A <- J^* A)
        for (int i = 0; i < n; ++i) {
          cplx aip = a.at(i, p), air = a.at(i, r);
          a.at(i, p) = c * aip - s * std::conj(phase) * air;
          a.at(i, r) = s * phase * aip + c * air;
        }
        for (int i = 0; i < n; ++i) {
          cplx api = a.at(p, i), ari = a.at(r, i);
          a.at(p, i) = c * api - s * phase * ari;
          a.at(r, i) = s * std::conj(phase) * api + c * ari;
        }
        for (int i = 0; i < n; ++i) {
          cplx qip = q.at(i, p), qir = q.at(i, r);
          q.at(i, p) = c * qip - s * std::conj(phase) * qir;
          q.at(i, r) = s * phase * qip + c * qir;
        }
      }
  }
  eig.resize(n);
  for (int i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
}

}  // namespace

std::vector<EigenBlock> eigendecompose(const UnitaryPoint& u, double cluster_tol) {
  const int n = u.n();
  CMat h(n, n), k(n, n);
  const cplx inv2i(0.0, -0.5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx xij = u.x.at(i, j), xji_bar = std::conj(u.x.at(j, i));
      h.at(i, j) = 0.5 * (xij + xji_bar);
      k.at(i, j) = inv2i * (xij - xji_bar);
    }

  std::vector<double> h_eig;
  CMat q;
  hermitian_jacobi(h, h_eig, q);

  // cluster the cosine eigenvalues, then split each cluster with the sine
  // part; the pair (cos, sin) pins the angle
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return h_eig[a] < h_eig[b]; });

  std::vector<double> angles(n);
  CMat vectors(n, n);
  int filled = 0;
  const double h_tol = 1e-7;
  for (int start = 0; start < n;) {
    int stop = start + 1;
    while (stop < n && h_eig[order[stop]] - h_eig[order[stop - 1]] < h_tol) ++stop;
    std::vector<int> cluster(order.begin() + start, order.begin() + stop);
    CMat basis = q.columns(cluster);
    CMat kb = basis.adjoint().multiply(k.multiply(basis));
    std::vector<double> k_eig;
    CMat r;
    hermitian_jacobi(kb, k_eig, r);
    CMat refined = basis.multiply(r);
    double cos_here = h_eig[order[start]];
    for (std::size_t c = 0; c < cluster.size(); ++c) {
      angles[filled] = frac(std::atan2(k_eig[c], cos_here) / (2.0 * M_PI));
      for (int i = 0; i < n; ++i) vectors.at(i, filled) = refined.at(i, static_cast<int>(c));
      ++filled;
    }
    start = stop;
  }

  std::vector<int> by_angle(n);
  std::iota(by_angle.begin(), by_angle.end(), 0);
  std::sort(by_angle.begin(), by_angle.end(),
            [&](int a, int b) { return angles[a] < angles[b]; });

  std::vector<EigenBlock> blocks;
  for (int start = 0; start < n;) {
    int stop = start + 1;
    while (stop < n &&
           circle_dist(angles[by_angle[stop]] - angles[by_angle[start]]) < cluster_tol)
      ++stop;
    EigenBlock block;
    block.angle = angles[by_angle[start]];
    std::vector<int> cols(by_angle.begin() + start, by_angle.begin() + stop);
    std::sort(cols.begin(), cols.end());
    block.basis = vectors.columns(cols);
    blocks.push_back(std::move(block));
    start = stop;
  }
  // wrap-around merge: angles just below 1 belong with angle 0
  if (blocks.size() > 1 &&
      circle_dist(blocks.back().angle - blocks.front().angle) < cluster_tol) {
    CMat joined(n, blocks.front().basis.cols + blocks.back().basis.cols);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < blocks.front().basis.cols; ++j)
        joined.at(i, j) = blocks.front().basis.at(i, j);
      for (int j = 0; j < blocks.back().basis.cols; ++j)
        joined.at(i, blocks.front().basis.cols + j) = blocks.back().basis.at(i, j);
    }
    blocks.front().basis = std::move(joined);
    blocks.pop_back();
  }
  return blocks;
}

namespace {

void lex_subsets(int n, int d, std::vector<std::vector<int>>& out) {
  out.clear();
  std::vector<int> cur(d);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == d) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
}

std::vector<cplx> wedge_coordinates(const CMat& basis) {
  const int n = basis.rows, d = basis.cols;
  std::vector<std::vector<int>> subsets;
  lex_subsets(n, d, subsets);
  std::vector<cplx> coords(subsets.size());
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    CMat minor(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) minor.at(i, j) = basis.at(subsets[s][i], j);
    coords[s] = d == 0 ? cplx(1.0) : determinant(minor);
  }
  return coords;
}

void fix_phase(std::vector<cplx>& coords) {
  double norm = 0.0;
  for (const cplx& v : coords) norm += std::norm(v);
  norm = std::sqrt(norm);
  if (norm == 0.0) throw std::logic_error("wedge vector vanished");
  for (cplx& v : coords) v /= norm;
  for (const cplx& v : coords)
    if (std::abs(v) > 1e-12) {
      cplx rotate = std::conj(v) / std::abs(v);
      for (cplx& w : coords) w *= rotate;
      break;
    }
}

void check_gap(const std::vector<EigenBlock>& blocks, double t, double gap_tol) {
  for (const EigenBlock& b : blocks)
    if (circle_dist(t - b.angle) <= gap_tol)
      throw std::invalid_argument("cut lies within gap_tol of an eigenvalue");
}

}  // namespace

DetLine spectral_line(const UnitaryPoint& u, Cut a, Cut b, double gap_tol,
                      double cluster_tol) {
  if (a.t <= 0.0 || a.t >= 1.0 || b.t <= 0.0 || b.t >= 1.0)
    throw std::invalid_argument("cuts must lie in the open interval (0,1)");
  std::vector<EigenBlock> blocks = eigendecompose(u, cluster_tol);
  check_gap(blocks, a.t, gap_tol);
  check_gap(blocks, b.t, gap_tol);

  DetLine line;
  line.n = u.n();
  line.dual_flag = a.t > b.t;
  line.cut_lo = std::min(a.t, b.t);
  line.cut_hi = std::max(a.t, b.t);

  std::vector<const EigenBlock*> inside;
  for (const EigenBlock& blk : blocks)
    if (blk.angle > line.cut_lo && blk.angle < line.cut_hi) inside.push_back(&blk);

  int dim = 0;
  for (const EigenBlock* blk : inside) dim += blk->basis.cols;
  line.dim = dim;
  line.basis = CMat(line.n, dim);
  int col = 0;
  for (const EigenBlock* blk : inside)
    for (int j = 0; j < blk->basis.cols; ++j, ++col)
      for (int i = 0; i < line.n; ++i) line.basis.at(i, col) = blk->basis.at(i, j);
  line.wedge = wedge_coordinates(line.basis);
  fix_phase(line.wedge);
  return line;
}

MultiplyResult multiply(const UnitaryPoint& u, const DetLine& l1, const DetLine& l2,
                        double gap_tol, double cluster_tol) {
  if (l1.dual_flag || l2.dual_flag)
    throw std::invalid_argument("multiply: reduce dual lines to ascending chains first");
  if (std::abs(l1.cut_hi - l2.cut_lo) > 1e-12)
    throw std::invalid_argument("multiply: cut chains do not match");
  DetLine canonical = spectral_line(u, Cut{l1.cut_lo}, Cut{l2.cut_hi}, gap_tol, cluster_tol);
  if (canonical.dim != l1.dim + l2.dim)
    throw std::invalid_argument("multiply: line dimensions are not additive");

  CMat concat(l1.n, l1.dim + l2.dim);
  for (int i = 0; i < l1.n; ++i) {
    for (int j = 0; j < l1.dim; ++j) concat.at(i, j) = l1.basis.at(i, j);
    for (int j = 0; j < l2.dim; ++j) concat.at(i, l1.dim + j) = l2.basis.at(i, j);
  }
  cplx scalar = canonical.dim == 0
                    ? cplx(1.0)
                    : determinant(canonical.basis.adjoint().multiply(concat));
  return MultiplyResult{std::move(canonical), scalar};
}

double check_cocycle(const UnitaryPoint& u, const std::vector<Cut>& cuts,
                     double gap_tol, double cluster_tol) {
  if (cuts.size() < 3 || cuts.size() > 4)
    throw std::invalid_argument("check_cocycle: 3 or 4 ascending cuts expected");
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (cuts[i - 1].t >= cuts[i].t)
      throw std::invalid_argument("check_cocycle: cuts must ascend");

  double residual = 0.0;
  auto line = [&](int i, int j) {
    return spectral_line(u, cuts[i], cuts[j], gap_tol, cluster_tol);
  };

  // unit-modulus comparison scalars for consecutive products
  for (std::size_t i = 0; i + 2 < cuts.size(); ++i) {
    DetLine l1 = line(static_cast<int>(i), static_cast<int>(i + 1));
    DetLine l2 = line(static_cast<int>(i + 1), static_cast<int>(i + 2));
    MultiplyResult m = multiply(u, l1, l2, gap_tol, cluster_tol);
    residual = std::max(residual, std::abs(std::abs(m.scalar) - 1.0));
  }

  // associativity square over a 4-cut chain
  if (cuts.size() == 4) {
    DetLine ab = line(0, 1), bc = line(1, 2), cd = line(2, 3);
    MultiplyResult ac = multiply(u, ab, bc, gap_tol, cluster_tol);
    MultiplyResult ad_left = multiply(u, ac.line, cd, gap_tol, cluster_tol);
    MultiplyResult bd = multiply(u, bc, cd, gap_tol, cluster_tol);
    MultiplyResult ad_right = multiply(u, ab, bd.line, gap_tol, cluster_tol);
    cplx s_left = ac.scalar * ad_left.scalar;
    cplx s_right = bd.scalar * ad_right.scalar;
    residual = std::max(residual, std::abs(s_left - s_right));
  }

  // duality pairing: the reversed pair carries the dual line; its pairing
  // with the original is 1
  DetLine fwd = line(0, static_cast<int>(cuts.size()) - 1);
  DetLine rev = spectral_line(u, cuts[cuts.size() - 1], cuts[0], gap_tol, cluster_tol);
  if (!rev.dual_flag || rev.dim != fwd.dim)
    return 1.0;
  cplx pairing = 0.0;
  for (std::size_t i = 0; i < fwd.wedge.size(); ++i)
    pairing += std::conj(rev.wedge[i]) * fwd.wedge[i];
  residual = std::max(residual, std::abs(std::abs(pairing) - 1.0));
  return residual;
}

UnitaryPoint random_su(int n, Rng& rng) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = cplx(rng.gaussian(), rng.gaussian());
  // modified Gram-Schmidt with positive-real diagonal of R
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(m.at(i, k)) * m.at(i, j);
      for (int i = 0; i < n; ++i) m.at(i, j) -= proj * m.at(i, k);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(m.at(i, j));
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw std::runtime_error("random_su: degenerate sample");
    for (int i = 0; i < n; ++i) m.at(i, j) /= norm;
  }
  cplx det = determinant(m);
  for (int i = 0; i < n; ++i) m.at(i, n - 1) *= std::conj(det) / std::abs(det);
  return UnitaryPoint(std::move(m), 1e-8);
}

std::vector<Cut> random_cuts(const UnitaryPoint& u, int count, Rng& rng,
                             double gap_tol) {
  std::vector<EigenBlock> blocks = eigendecompose(u);
  std::vector<Cut> cuts;
  int guard = 0;
  while (static_cast<int>(cuts.size()) < count) {
    if (++guard > 10000) throw std::runtime_error("random_cuts: gave up");
    double t = rng.uniform(0.01, 0.99);
    bool ok = true;
    for (const EigenBlock& b : blocks)
      if (circle_dist(t - b.angle) <= 2.0 * gap_tol) ok = false;
    for (const Cut& c : cuts)
      if (std::abs(c.t - t) <= 2.0 * gap_tol) ok = false;
    if (ok) cuts.push_back(Cut{t});
  }
  std::sort(cuts.begin(), cuts.end(), [](Cut a, Cut b) { return a.t < b.t; });
  return cuts;
}

}  // namespace gerbelab::spectral
