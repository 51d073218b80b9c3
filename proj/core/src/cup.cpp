#include "gerbelab/cup.hpp"

#include <cmath>

namespace gerbelab::cup {

ExtElement ext_multiply(const ExtElement& p, const ExtElement& q) {
  return ExtElement{frac(p.z + q.z), p.n + q.n,
                    frac(p.w + q.w + static_cast<double>(q.n) * p.z)};
}

ExtElement ext_multiply_printed(const ExtElement& p, const ExtElement& q) {
  return ExtElement{frac(p.z + q.z), p.n + q.n,
                    frac(p.w + q.w + static_cast<double>(p.n) * p.z)};
}

double u1xz_cocycle(const ExtElement& p, const ExtElement& q) {
  return frac(static_cast<double>(q.n) * p.z);
}

Cochain cup_product(const Cochain& a, const Cochain& b, const Nerve& nerve) {
  if (a.ring != Ring::Int || b.ring != Ring::Int)
    throw std::invalid_argument("cup_product: integral cochains required");
  if (!is_cocycle(a, nerve) || !is_cocycle(b, nerve))
    throw std::domain_error("cup_product: inputs must be cocycles");
  const int p = a.degree, q = b.degree;
  if (p + q > nerve.max_degree())
    throw std::invalid_argument("cup_product: degree overflow");
  const auto& simps = nerve.simplices(p + q);
  Cochain out = Cochain::zeros(Ring::Int, p + q, simps.size());
  std::vector<int> front(p + 1), back(q + 1);
  for (std::size_t s = 0; s < simps.size(); ++s) {
    const auto& simplex = simps[s];
    for (int i = 0; i <= p; ++i) front[i] = simplex[i];
    for (int i = 0; i <= q; ++i) back[i] = simplex[p + i];
    int fi = nerve.index_of(front), bi = nerve.index_of(back);
    if (fi < 0 || bi < 0) throw std::logic_error("cup_product: missing face");
    out.zvals[s] = a.zvals[fi] * b.zvals[bi];
  }
  return out;
}

CechGerbe cup_gerbe(const Cochain& a, const Cochain& b, const Nerve& nerve) {
  if (a.degree != 2 || b.degree != 1)
    throw std::invalid_argument("cup_gerbe: expected a 2-cocycle and a 1-cocycle");
  Cochain w = cup_product(a, b, nerve);

  // when the first factor bounds over the reals, (h cup b) mod 1 is an
  // exactly closed circle presentation with Bockstein class [a cup b]
  NerveHomology hom(nerve);
  std::vector<double> rhs(a.zvals.begin(), a.zvals.end());
  auto h = solve_rational(hom.snf(1), std::span<const double>(rhs));
  if (h) {
    const auto& tris = nerve.simplices(2);
    Cochain g = Cochain::zeros(Ring::Circle, 2, tris.size());
    for (std::size_t s = 0; s < tris.size(); ++s) {
      const auto& tri = tris[s];
      int front = nerve.index_of({tri[0], tri[1]});
      int back = nerve.index_of({tri[1], tri[2]});
      g.rvals[s] = frac((*h)[front] * static_cast<double>(b.zvals[back]));
    }
    return from_cocycle(nerve, g, 1e-8);
  }

  CechGerbe out = from_dd_cocycle(nerve, w);
  return out;
}

TransitionData TransitionData::flat(const Nerve& nerve, Cochain integer_part,
                                    Cochain circle_part) {
  TransitionData t;
  t.integer_part = std::move(integer_part);
  t.circle_part = std::move(circle_part);
  t.circle_winding = Cochain::zeros(Ring::Int, 2, nerve.count(2));
  return t;
}

TransitionData TransitionData::winding(const Nerve& nerve, Cochain integer_part,
                                       Cochain circle_winding) {
  TransitionData t;
  t.integer_part = std::move(integer_part);
  t.circle_part = Cochain::zeros(Ring::Circle, 1, nerve.count(1));
  t.circle_winding = std::move(circle_winding);
  return t;
}

namespace {

void check_extension_cocycle(const std::function<double(ExtElement, ExtElement)>& eps) {
  for (int i = 0; i < 500; ++i) {
    Rng rng = Rng::stream(7, "lifting", "extension-cocycle", static_cast<std::uint64_t>(i));
    ExtElement g{rng.uniform(), rng.uniform_int(-3, 3), 0.0};
    ExtElement h{rng.uniform(), rng.uniform_int(-3, 3), 0.0};
    ExtElement k{rng.uniform(), rng.uniform_int(-3, 3), 0.0};
    ExtElement gh{frac(g.z + h.z), g.n + h.n, 0.0};
    ExtElement hk{frac(h.z + k.z), h.n + k.n, 0.0};
    double lhs = eps(g, h) + eps(gh, k);
    double rhs = eps(h, k) + eps(g, hk);
    if (circle_dist(lhs - rhs) > 1e-9)
      throw std::domain_error("lifting_gerbe: extension fails the 2-cocycle identity");
  }
}

bool all_zero(const Cochain& c) {
  for (long long v : c.zvals)
    if (v != 0) return false;
  return true;
}

}  // namespace

CechGerbe lifting_gerbe(const Nerve& nerve, const TransitionData& t,
                        const std::function<double(ExtElement, ExtElement)>& eps) {
  if (t.integer_part.ring != Ring::Int || t.integer_part.degree != 1)
    throw std::invalid_argument("lifting_gerbe: integer part must be a 1-cochain over Z");
  if (!is_cocycle(t.integer_part, nerve))
    throw std::domain_error("lifting_gerbe: integer transition part is not a cocycle");
  if (t.circle_winding.ring != Ring::Int || t.circle_winding.degree != 2 ||
      !is_cocycle(t.circle_winding, nerve))
    throw std::domain_error("lifting_gerbe: circle winding must be an integral 2-cocycle");
  check_extension_cocycle(eps);

  const auto& tris = nerve.simplices(2);
  Cochain g = Cochain::zeros(Ring::Circle, 2, tris.size());
  for (std::size_t s = 0; s < tris.size(); ++s) {
    const auto& tri = tris[s];
    int ab = nerve.index_of({tri[0], tri[1]});
    int bc = nerve.index_of({tri[1], tri[2]});
    ExtElement t_ab{t.circle_part.rvals[ab], t.integer_part.zvals[ab], 0.0};
    ExtElement t_bc{t.circle_part.rvals[bc], t.integer_part.zvals[bc], 0.0};
    g.rvals[s] = frac(eps(t_ab, t_bc));
  }

  if (all_zero(t.circle_winding)) {
    if (cocycle_violation(t.circle_part, nerve) > 1e-10)
      throw std::domain_error("lifting_gerbe: flat circle part is not a cocycle");
    return from_cocycle(nerve, g, 1e-8);
  }

  // winding transition data: the class of the lifting gerbe for the u1xz
  // extension is the cup product of the winding with the Z part
  CechGerbe out;
  out.nerve = nerve;
  out.g = std::move(g);
  out.winding = cup_product(t.circle_winding, t.integer_part, nerve);
  return out;
}

CechGerbe lifting_gerbe_u1xz(const Nerve& nerve, const TransitionData& t) {
  return lifting_gerbe(nerve, t, [](ExtElement p, ExtElement q) {
    return u1xz_cocycle(p, q);
  });
}

Cochain hopf_cocycle(const Nerve& octa_nerve) {
  if (octa_nerve.count(2) == 0)
    throw std::invalid_argument("hopf_cocycle: nerve has no 2-simplices");
  Cochain c = Cochain::zeros(Ring::Int, 2, octa_nerve.count(2));
  c.zvals[0] = 1;
  ClassCoordinates coords = class_coordinates(c, octa_nerve);
  if (coords.free_coords.size() != 1 || std::llabs(coords.free_coords[0]) != 1)
    throw std::logic_error("hopf_cocycle: nerve does not carry H^2 = Z");
  if (coords.free_coords[0] < 0) c.zvals[0] = -1;
  return c;
}

Cochain winding_cocycle(const Nerve& circle_nerve, int resolution) {
  Cochain c = Cochain::zeros(Ring::Int, 1, circle_nerve.count(1));
  int wrap = circle_nerve.index_of({0, resolution - 1});
  if (wrap < 0) throw std::invalid_argument("winding_cocycle: wrap edge missing");
  c.zvals[wrap] = -1;
  return c;
}

}  // namespace gerbelab::cup
