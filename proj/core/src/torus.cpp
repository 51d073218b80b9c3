#include "gerbelab/torus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace gerbelab::torus {

void FiberTuple::validate() const {
  if (points.size() < 2 || points.size() > 4)
    throw std::invalid_argument("fiber tuple must hold 2 to 4 points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      for (int c = 0; c < 3; ++c) {
        double d = points[i].x[c] - points[j].x[c];
        if (std::abs(d - std::round(d)) > 1e-9)
          throw std::invalid_argument(
              "fiber tuple points do not differ by integer vectors");
      }
}

namespace {

constexpr int kMaskCount = 8;  // subsets of {1,2,3} as bitmasks

int comp_position(int degree, int mask) {
  // increasing bitmask order agrees with increasing multi-index order
  int pos = 0;
  for (int m = 0; m < mask; ++m)
    if (std::popcount(static_cast<unsigned>(m)) == degree) ++pos;
  return pos;
}

int comp_count(int degree) {
  static constexpr int counts[4] = {1, 3, 3, 1};
  return counts[degree];
}

// polynomial in the coordinates of up to four tuple slots; variable
// 3*slot + coord
struct Poly {
  std::map<std::array<uint8_t, 12>, double> terms;

  static Poly variable(int slot, int coord) {
    Poly p;
    std::array<uint8_t, 12> m{};
    m[3 * slot + coord] = 1;
    p.terms[m] = 1.0;
    return p;
  }

  static Poly constant(double v) {
    Poly p;
    if (v != 0.0) p.terms[{}] = v;
    return p;
  }

  void add(const Poly& other, double scale = 1.0) {
    for (const auto& [m, v] : other.terms) {
      double& slot = terms[m];
      slot += scale * v;
      if (slot == 0.0) terms.erase(m);
    }
  }

  Poly times(const Poly& other) const {
    Poly out;
    for (const auto& [ma, va] : terms)
      for (const auto& [mb, vb] : other.terms) {
        std::array<uint8_t, 12> m = ma;
        for (int i = 0; i < 12; ++i) m[i] += mb[i];
        out.terms[m] += va * vb;
      }
    return out;
  }

  Poly derivative(int var) const {
    Poly out;
    for (const auto& [m, v] : terms) {
      if (m[var] == 0) continue;
      std::array<uint8_t, 12> d = m;
      d[var] -= 1;
      out.terms[d] += v * m[var];
    }
    return out;
  }

  Poly remap_slots(const std::vector<int>& slot_map) const {
    Poly out;
    for (const auto& [m, v] : terms) {
      std::array<uint8_t, 12> r{};
      for (int s = 0; s < static_cast<int>(slot_map.size()); ++s)
        for (int c = 0; c < 3; ++c) r[3 * slot_map[s] + c] += m[3 * s + c];
      out.terms[r] += v;
    }
    return out;
  }

  double eval(const std::vector<TorusPoint>& pts) const {
    double acc = 0.0;
    for (const auto& [m, v] : terms) {
      double t = v;
      for (int i = 0; i < 12; ++i)
        for (int k = 0; k < m[i]; ++k) t *= pts[i / 3].x[i % 3];
      acc += t;
    }
    return acc;
  }
};

// form on Y^[slots] with polynomial coefficients in the theta basis; the
// slot differentials all collapse to theta since the slots differ by
// constant integer vectors
struct PolyForm {
  int slots = 1;
  int degree = 0;
  std::map<int, Poly> coeffs;  // multi-index bitmask -> coefficient

  PolyForm d() const {
    PolyForm out{slots, degree + 1, {}};
    for (const auto& [mask, poly] : coeffs)
      for (int i = 0; i < 3; ++i) {
        int bit = 1 << i;
        if (mask & bit) continue;
        Poly total;
        for (int s = 0; s < slots; ++s) total.add(poly.derivative(3 * s + i));
        if (total.terms.empty()) continue;
        int below = std::popcount(static_cast<unsigned>(mask & (bit - 1)));
        out.coeffs[mask | bit].add(total, below % 2 == 0 ? 1.0 : -1.0);
      }
    return out;
  }

  // alternating sum of pullbacks along the slot-omitting projections
  PolyForm delta_slots() const {
    PolyForm out{slots + 1, degree, {}};
    for (int omit = 0; omit <= slots; ++omit) {
      std::vector<int> slot_map(slots);
      for (int s = 0; s < slots; ++s) slot_map[s] = s < omit ? s : s + 1;
      double sign = omit % 2 == 0 ? 1.0 : -1.0;
      for (const auto& [mask, poly] : coeffs)
        out.coeffs[mask].add(poly.remap_slots(slot_map), sign);
    }
    return out;
  }

  LatticeForm eval(const std::vector<TorusPoint>& pts) const {
    LatticeForm out = LatticeForm::zero(degree);
    for (const auto& [mask, poly] : coeffs)
      out.comps[comp_position(degree, mask)] += poly.eval(pts);
    return out;
  }
};

PolyForm gamma_form() {
  // (y1 - z1)(x2 - y2) x3 on Y^[3], slots x=0, y=1, z=2
  Poly p = Poly::variable(1, 0);
  p.add(Poly::variable(2, 0), -1.0);
  Poly q = Poly::variable(0, 1);
  q.add(Poly::variable(1, 1), -1.0);
  Poly g = p.times(q).times(Poly::variable(0, 2));
  return PolyForm{3, 0, {{0, g}}};
}

PolyForm connection_form() {
  // -(x1 - y1) x2 theta3 on Y^[2]
  Poly p = Poly::variable(0, 0);
  p.add(Poly::variable(1, 0), -1.0);
  Poly coeff = p.times(Poly::variable(0, 1));
  Poly minus;
  minus.add(coeff, -1.0);
  return PolyForm{2, 1, {{4, minus}}};
}

PolyForm curving_form() {
  // x1 theta2 ^ theta3 on Y
  return PolyForm{1, 2, {{6, Poly::variable(0, 0)}}};
}

PolyForm omega_form() {
  // theta1 ^ theta2 ^ theta3
  return PolyForm{1, 3, {{7, Poly::constant(1.0)}}};
}

double max_abs_diff(const LatticeForm& a, const LatticeForm& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.comps.size(); ++i)
    worst = std::max(worst, std::abs(a.comps[i] - b.comps[i]));
  return worst;
}

}  // namespace

LatticeForm LatticeForm::zero(int degree) {
  LatticeForm f;
  f.degree = degree;
  f.comps.assign(comp_count(degree), 0.0);
  return f;
}

double LatticeForm::max_abs() const {
  double worst = 0.0;
  for (double v : comps) worst = std::max(worst, std::abs(v));
  return worst;
}

double gamma(const FiberTuple& t) {
  t.validate();
  if (t.points.size() != 3)
    throw std::invalid_argument("gamma: a Y^[3] tuple is required");
  const auto& x = t.points[0].x;
  const auto& y = t.points[1].x;
  const auto& z = t.points[2].x;
  return (y[0] - z[0]) * (x[1] - y[1]) * x[2];
}

double gamma_closed_form(const FiberTuple& t) {
  // (w-z)^1 (z-y)^2 (y-x)^3: each factor is an integer on Y^[4], so the
  // coboundary is manifestly integral
  const auto& x = t.points[0].x;
  const auto& y = t.points[1].x;
  const auto& z = t.points[2].x;
  const auto& w = t.points[3].x;
  return (w[0] - z[0]) * (z[1] - y[1]) * (y[2] - x[2]);
}

double delta_gamma(const FiberTuple& t) {
  t.validate();
  if (t.points.size() != 4)
    throw std::invalid_argument("delta_gamma: a Y^[4] tuple is required");
  double alternating = 0.0;
  for (int omit = 0; omit < 4; ++omit) {
    FiberTuple face;
    for (int i = 0; i < 4; ++i)
      if (i != omit) face.points.push_back(t.points[i]);
    alternating += (omit % 2 == 0 ? 1.0 : -1.0) * gamma(face);
  }
  double closed = gamma_closed_form(t);
  if (std::abs(alternating - closed) > 1e-9)
    throw std::logic_error("delta_gamma: alternating sum disagrees with closed form");
  if (std::abs(closed - std::round(closed)) > 1e-9)
    throw std::logic_error("delta_gamma: value is not an integer");
  return alternating;
}

LatticeForm connection_a(const FiberTuple& t) {
  t.validate();
  if (t.points.size() != 2)
    throw std::invalid_argument("connection_a: a Y^[2] tuple is required");
  return connection_form().eval(t.points);
}

double check_connection(const FiberTuple& t) {
  t.validate();
  if (t.points.size() != 3)
    throw std::invalid_argument("check_connection: a Y^[3] tuple is required");
  static const PolyForm delta_a = connection_form().delta_slots();
  static const PolyForm d_gamma = gamma_form().d();
  return max_abs_diff(delta_a.eval(t.points), d_gamma.eval(t.points));
}

LatticeForm curving_f(const TorusPoint& p) {
  return curving_form().eval({p});
}

double check_curving(const FiberTuple& t) {
  t.validate();
  if (t.points.size() != 2)
    throw std::invalid_argument("check_curving: a Y^[2] tuple is required");
  static const PolyForm delta_f = curving_form().delta_slots();
  static const PolyForm d_a = connection_form().d();
  return max_abs_diff(delta_f.eval(t.points), d_a.eval(t.points));
}

LatticeForm three_curvature() {
  return omega_form().eval({TorusPoint{}});
}

double integrate_three_curvature(int grid, double scale) {
  if (grid < 1) throw std::invalid_argument("integrate: grid must be positive");
  const PolyForm omega = omega_form();
  double acc = 0.0;
  const double h = 1.0 / grid;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        TorusPoint p{{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h}};
        acc += scale * omega.eval({p}).comps[0];
      }
  // dividing the accumulated sum once keeps the constant case exact
  return acc / (static_cast<double>(grid) * grid * grid);
}

double check_df(const TorusPoint& p) {
  static const PolyForm df = curving_form().d();
  static const PolyForm omega = omega_form();
  return max_abs_diff(df.eval({p}), omega.eval({p}));
}

namespace {

double lift_into(double u, const Arc& arc) {
  double offset = frac(u - arc.lo);
  if (offset >= arc.len)
    throw std::invalid_argument("section: point does not lie in the arc");
  return arc.lo + offset;
}

// integer shift aligning b's representative onto a's overlap; unique for a
// good cover, multiple alignments mean the boxes wrap around each other
long long pair_shift(const Arc& a, const Arc& b) {
  double centre = (a.lo + a.hi()) / 2.0 - (b.lo + b.hi()) / 2.0;
  long long base = static_cast<long long>(std::llround(centre));
  std::vector<long long> hits;
  for (long long s = base - 1; s <= base + 1; ++s)
    if (b.lo + s < a.hi() && b.hi() + s > a.lo) hits.push_back(s);
  if (hits.empty())
    throw std::invalid_argument("section offsets: arcs do not overlap");
  if (hits.size() > 1)
    throw std::domain_error(
        "section-choice inconsistency: overlap is disconnected (boxes too large)");
  return hits[0];
}

}  // namespace

std::array<long long, 3> section_offset(const ArcProduct& cover, int alpha, int beta) {
  std::vector<Arc> box_a = cover.box(alpha);
  std::vector<Arc> box_b = cover.box(beta);
  std::array<long long, 3> out{0, 0, 0};
  for (int c = 0; c < cover.dimension; ++c)
    out[c] = -pair_shift(box_a[c], box_b[c]);
  return out;
}

TorusPoint overlap_midpoint(const ArcProduct& cover, const std::vector<int>& boxes) {
  TorusPoint out;
  for (int c = 0; c < cover.dimension; ++c) {
    std::vector<Arc> arcs;
    for (int b : boxes) arcs.push_back(cover.box(b)[c]);
    auto cap = intersect_arcs(arcs);
    if (!cap) throw std::invalid_argument("overlap_midpoint: boxes do not meet");
    out.x[c] = frac(cap->lo + cap->len / 2.0);
  }
  return out;
}

TorusPoint section(const ArcProduct& cover, int box, const TorusPoint& base) {
  std::vector<Arc> arcs = cover.box(box);
  TorusPoint out;
  for (int c = 0; c < cover.dimension; ++c) out.x[c] = lift_into(base.x[c], arcs[c]);
  return out;
}

ArcProduct box_cover(int resolution, double margin) {
  if (resolution < 3)
    throw std::invalid_argument("cech_cocycle: resolution must be at least 3");
  if (margin < 0.0) margin = default_margin(resolution);
  return ArcProduct{resolution, margin, 3};
}

CechGerbe cech_cocycle(int resolution, double margin) {
  ArcProduct cover = box_cover(resolution, margin);
  Nerve nerve = build_nerve(cover.cover(), 4);

  const auto& edges = nerve.simplices(1);
  std::vector<std::array<long long, 3>> offsets(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    offsets[e] = section_offset(cover, edges[e][0], edges[e][1]);

  auto offset_of = [&](int a, int b) -> std::array<long long, 3> {
    int idx = nerve.index_of({a, b});
    if (idx < 0) throw std::logic_error("cech_cocycle: missing edge");
    return offsets[idx];
  };

  // the offsets must satisfy o(a,b) + o(b,c) = o(a,c) on every triangle;
  // failure means the sections cannot be chosen consistently at this size
  for (const auto& tri : nerve.simplices(2)) {
    auto oab = offset_of(tri[0], tri[1]);
    auto obc = offset_of(tri[1], tri[2]);
    auto oac = offset_of(tri[0], tri[2]);
    for (int c = 0; c < 3; ++c)
      if (oab[c] + obc[c] != oac[c])
        throw std::domain_error(
            "section-choice inconsistency: offsets fail the cocycle condition");
  }

  const auto& triangles = nerve.simplices(2);
  Cochain g = Cochain::zeros(Ring::Circle, 2, triangles.size());
  for (std::size_t s = 0; s < triangles.size(); ++s) {
    const auto& tri = triangles[s];
    TorusPoint base = overlap_midpoint(cover, tri);
    FiberTuple t;
    for (int v : tri) t.points.push_back(section(cover, v, base));
    g.rvals[s] = frac(gamma(t));
  }

  // winding = coboundary of the continuous lift gamma(s_a, s_b, s_c),
  // constant on each overlap: offset(c,d)^1 * offset(b,c)^2 * offset(a,b)^3
  const auto& tets = nerve.simplices(3);
  Cochain winding = Cochain::zeros(Ring::Int, 3, tets.size());
  for (std::size_t s = 0; s < tets.size(); ++s) {
    const auto& tet = tets[s];
    auto o1 = offset_of(tet[0], tet[1]);
    auto o2 = offset_of(tet[1], tet[2]);
    auto o3 = offset_of(tet[2], tet[3]);
    winding.zvals[s] = o3[0] * o2[1] * o1[2];
  }

  CechGerbe out;
  out.nerve = std::move(nerve);
  out.g = std::move(g);
  out.winding = std::move(winding);
  return out;
}

}  // namespace gerbelab::torus
