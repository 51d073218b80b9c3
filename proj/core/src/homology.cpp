#include "gerbelab/homology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gerbelab {

namespace {

constexpr double kIntegralityTol = 1e-6;

long long order_lcm(long long a, long long b) {
  return a / std::gcd(a, b) * b;
}

// column-sparse product: out = dense (k x n) * sparse A (n x m)
IntMatrix sparse_right_multiply(const IntMatrix& dense, const IntMatrix& sparse) {
  IntMatrix out(dense.rows, sparse.cols);
  for (int i = 0; i < sparse.rows; ++i)
    for (int j = 0; j < sparse.cols; ++j) {
      long long v = sparse.at(i, j);
      if (v == 0) continue;
      for (int r = 0; r < dense.rows; ++r)
        if (dense.at(r, i) != 0)
          out.at(r, j) = detail::checked_add(out.at(r, j),
                                             detail::checked_mul(dense.at(r, i), v));
    }
  return out;
}

}  // namespace

IntMatrix coboundary_matrix(const Nerve& nerve, int degree) {
  if (degree < 0) {
    // delta_{-1}: C^{-1} = 0 -> C^0
    return IntMatrix(static_cast<int>(nerve.count(0)), 0);
  }
  if (degree + 1 > nerve.max_degree())
    throw std::invalid_argument("coboundary_matrix: degree out of range");
  const auto& rows = nerve.simplices(degree + 1);
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(nerve.count(degree)));
  std::vector<int> face(degree + 1);
  for (std::size_t s = 0; s < rows.size(); ++s) {
    const auto& simplex = rows[s];
    for (int omit = 0; omit <= degree + 1; ++omit) {
      int k = 0;
      for (int i = 0; i <= degree + 1; ++i)
        if (i != omit) face[k++] = simplex[i];
      int idx = nerve.index_of(face);
      if (idx < 0) throw std::logic_error("coboundary_matrix: missing face");
      m.at(static_cast<int>(s), idx) += (omit % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

struct NerveHomology::Quotient {
  int kernel_dim = 0;
  IntMatrix vinv_bottom;  // kernel-coordinate map: rows rank.. of v_inv
  SnfResult presentation; // SNF of the image expressed in kernel coordinates
  CohomologyGroup group;
  std::vector<int> torsion_rows;
};

const IntMatrix& NerveHomology::matrix(int degree) {
  auto it = matrices_.find(degree);
  if (it == matrices_.end())
    it = matrices_.emplace(degree, coboundary_matrix(*nerve_, degree)).first;
  return it->second;
}

const SnfResult& NerveHomology::snf(int degree) {
  auto it = snfs_.find(degree);
  if (it == snfs_.end())
    it = snfs_.emplace(degree, smith_normal_form(matrix(degree))).first;
  return it->second;
}

CohomologyGroup NerveHomology::cohomology(int degree) {
  if (degree < 0 || degree + 1 > nerve_->max_degree())
    throw std::invalid_argument("cohomology: degree out of range for nerve cap");
  const SnfResult& up = snf(degree);
  CohomologyGroup g;
  g.free_rank = static_cast<long long>(nerve_->count(degree)) - up.rank();
  if (degree > 0) {
    const SnfResult& down = snf(degree - 1);
    g.free_rank -= down.rank();
    for (long long d : down.diagonal)
      if (d > 1) g.torsion_factors.push_back(d);
  }
  return g;
}

const NerveHomology::Quotient& NerveHomology::quotient(int degree) {
  auto it = quotients_.find(degree);
  if (it != quotients_.end()) return *it->second;

  auto q = std::make_shared<Quotient>();
  const SnfResult& up = snf(degree);
  const int nk = static_cast<int>(nerve_->count(degree));
  const int rank_up = up.rank();
  q->kernel_dim = nk - rank_up;
  q->vinv_bottom = IntMatrix(q->kernel_dim, nk);
  for (int i = 0; i < q->kernel_dim; ++i)
    for (int j = 0; j < nk; ++j)
      q->vinv_bottom.at(i, j) = up.v_inv.at(rank_up + i, j);

  IntMatrix image = degree > 0 ? sparse_right_multiply(q->vinv_bottom, matrix(degree - 1))
                               : IntMatrix(q->kernel_dim, 0);
  q->presentation = smith_normal_form(image);

  q->group.free_rank = q->kernel_dim - q->presentation.rank();
  for (int i = 0; i < q->presentation.rank(); ++i)
    if (q->presentation.diagonal[i] > 1) {
      q->group.torsion_factors.push_back(q->presentation.diagonal[i]);
      q->torsion_rows.push_back(i);
    }
  quotients_.emplace(degree, q);
  return *q;
}

ClassInfo NerveHomology::class_info(const Cochain& z) {
  if (z.ring != Ring::Int) throw std::invalid_argument("class_info: integral cochain required");
  if (!gerbelab::is_cocycle(z, *nerve_))
    throw std::domain_error("class_info: input is not a cocycle");
  const SnfResult& down = snf(z.degree - 1);
  std::vector<long long> c = down.U.apply(std::span<const long long>(z.zvals));
  ClassInfo info;
  for (std::size_t i = down.diagonal.size(); i < c.size(); ++i)
    if (c[i] != 0) {
      info.order = std::nullopt;
      info.is_coboundary = false;
      return info;
    }
  long long ord = 1;
  for (std::size_t i = 0; i < down.diagonal.size(); ++i) {
    long long d = down.diagonal[i];
    long long rem = std::abs(c[i]) % d;
    if (rem != 0) ord = order_lcm(ord, d / std::gcd(d, rem));
  }
  info.order = ord;
  info.is_coboundary = (ord == 1);
  return info;
}

ClassCoordinates NerveHomology::class_coordinates(const Cochain& z) {
  if (z.ring != Ring::Int)
    throw std::invalid_argument("class_coordinates: integral cochain required");
  if (!gerbelab::is_cocycle(z, *nerve_))
    throw std::domain_error("class_coordinates: input is not a cocycle");
  const Quotient& q = quotient(z.degree);
  std::vector<long long> y = q.vinv_bottom.apply(std::span<const long long>(z.zvals));
  std::vector<long long> c = q.presentation.U.apply(std::span<const long long>(y));
  ClassCoordinates out;
  out.ambient = q.group;
  for (int i : q.torsion_rows) {
    long long d = q.presentation.diagonal[i];
    long long v = c[i] % d;
    if (v < 0) v += d;
    out.torsion_coords.push_back(v);
  }
  for (std::size_t i = q.presentation.diagonal.size(); i < c.size(); ++i)
    out.free_coords.push_back(c[i]);
  return out;
}

std::optional<Cochain> NerveHomology::solve_coboundary(const Cochain& g) {
  if (g.degree < 1) throw std::invalid_argument("solve_coboundary: degree must be >= 1");
  if (g.ring == Ring::Real)
    throw std::invalid_argument("solve_coboundary: supported rings are Z and R/Z");
  if (!gerbelab::is_cocycle(g, *nerve_, 1e-8))
    throw std::domain_error("solve_coboundary: input is not a cocycle");
  const SnfResult& s = snf(g.degree - 1);
  const std::size_t n_lower = nerve_->count(g.degree - 1);

  if (g.ring == Ring::Int) {
    auto x = solve_integer(s, std::span<const long long>(g.zvals));
    if (!x) return std::nullopt;
    Cochain q = Cochain::zeros(Ring::Int, g.degree - 1, n_lower);
    q.zvals = std::move(*x);
    return q;
  }

  // Circle: delta(q) = g mod 1 is solvable iff the coordinates of the lift
  // beyond the rank are integers; the divisible part solves over R.
  std::vector<double> lift(g.rvals.begin(), g.rvals.end());
  std::vector<double> c = s.U.apply(std::span<const double>(lift));
  const int r = s.rank();
  for (std::size_t i = r; i < c.size(); ++i)
    if (circle_dist(c[i]) > kIntegralityTol) return std::nullopt;
  std::vector<double> y(n_lower, 0.0);
  for (int i = 0; i < r && i < static_cast<int>(n_lower); ++i)
    y[i] = c[i] / static_cast<double>(s.diagonal[i]);
  std::vector<double> x = s.V.apply(std::span<const double>(y));
  Cochain q = Cochain::zeros(Ring::Circle, g.degree - 1, n_lower);
  for (std::size_t i = 0; i < x.size(); ++i) q.rvals[i] = frac(x[i]);
  return q;
}

CohomologyGroup cohomology(const Nerve& nerve, int degree) {
  return NerveHomology(nerve).cohomology(degree);
}

ClassInfo class_info(const Cochain& z, const Nerve& nerve) {
  return NerveHomology(nerve).class_info(z);
}

ClassCoordinates class_coordinates(const Cochain& z, const Nerve& nerve) {
  return NerveHomology(nerve).class_coordinates(z);
}

std::optional<Cochain> solve_coboundary(const Cochain& g, const Nerve& nerve) {
  return NerveHomology(nerve).solve_coboundary(g);
}

Cochain bockstein(const Cochain& g, const Nerve& nerve) {
  return bockstein_with_lift(g, nerve, {});
}

Cochain bockstein_with_lift(const Cochain& g, const Nerve& nerve,
                            std::span<const long long> lift_shift) {
  if (g.ring != Ring::Circle)
    throw std::invalid_argument("bockstein: circle cochain required");
  if (!lift_shift.empty() && lift_shift.size() != g.size())
    throw std::invalid_argument("bockstein: lift shift size mismatch");
  Cochain lift = Cochain::zeros(Ring::Real, g.degree, g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    lift.rvals[i] = frac(g.rvals[i]);
    if (!lift_shift.empty()) lift.rvals[i] += static_cast<double>(lift_shift[i]);
  }
  Cochain d = delta(lift, nerve);
  Cochain out = Cochain::zeros(Ring::Int, d.degree, d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double v = d.rvals[i];
    double rounded = std::round(v);
    if (std::abs(v - rounded) > kIntegralityTol)
      throw std::domain_error("bockstein: input was not a circle cocycle");
    out.zvals[i] = static_cast<long long>(rounded);
  }
  return out;
}

}  // namespace gerbelab
