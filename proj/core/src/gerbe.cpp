#include "gerbelab/gerbe.hpp"

#include <algorithm>
#include <cmath>

namespace gerbelab {

CechGerbe from_cocycle(const Nerve& nerve, const Cochain& g, double tol) {
  if (g.ring != Ring::Circle || g.degree != 2)
    throw std::invalid_argument("from_cocycle: a circle 2-cochain is required");
  double worst = cocycle_violation(g, nerve);
  if (worst > tol)
    throw std::domain_error(
        "from_cocycle: multiplication is not associative, max cocycle violation " +
        std::to_string(worst));
  CechGerbe out;
  out.nerve = nerve;
  out.g = g;
  for (double& v : out.g.rvals) v = frac(v);
  out.winding = bockstein(out.g, nerve);
  return out;
}

CechGerbe from_dd_cocycle(const Nerve& nerve, const Cochain& z) {
  if (z.ring != Ring::Int || z.degree != 3)
    throw std::invalid_argument("from_dd_cocycle: an integral 3-cochain is required");
  if (!is_cocycle(z, nerve))
    throw std::domain_error("from_dd_cocycle: input is not a cocycle");
  CechGerbe out;
  out.nerve = nerve;
  out.g = Cochain::zeros(Ring::Circle, 2, nerve.count(2));
  out.winding = z;
  return out;
}

CechGerbe dual(const CechGerbe& g) {
  CechGerbe out = g;
  for (double& v : out.g.rvals) v = v == 0.0 ? 0.0 : 1.0 - v;
  for (long long& v : out.winding.zvals) v = -v;
  return out;
}

CechGerbe tensor_reduced(const CechGerbe& a, const CechGerbe& b) {
  if (!a.nerve.same_as(b.nerve))
    throw std::invalid_argument("tensor_reduced: gerbes live on different nerves");
  CechGerbe out = a;
  for (std::size_t i = 0; i < out.g.rvals.size(); ++i)
    out.g.rvals[i] = frac(out.g.rvals[i] + b.g.rvals[i]);
  for (std::size_t i = 0; i < out.winding.zvals.size(); ++i)
    out.winding.zvals[i] += b.winding.zvals[i];
  return out;
}

CechGerbe refine(const CechGerbe& g, const Nerve& fine,
                 const std::vector<int>& vertex_map) {
  require_simplicial_map(fine, g.nerve, vertex_map);
  CechGerbe out;
  out.nerve = fine;
  out.g = pull_back(g.g, fine, g.nerve, vertex_map);
  out.winding = pull_back(g.winding, fine, g.nerve, vertex_map);
  return out;
}

CechGerbe tensor(const CechGerbe& a, const ArcProduct& cover_a,
                 const CechGerbe& b, const ArcProduct& cover_b) {
  if (a.nerve.same_as(b.nerve)) return tensor_reduced(a, b);

  Overlay joint = overlay_cover(cover_a, cover_b);
  Nerve fine = build_nerve(joint.cover, a.nerve.max_degree());
  CechGerbe lifted_a = refine(a, fine, joint.to_a);
  CechGerbe lifted_b = refine(b, fine, joint.to_b);
  return tensor_reduced(lifted_a, lifted_b);
}

DDClass dd(const CechGerbe& g, NerveHomology& hom) {
  DDClass out;
  out.cocycle = g.winding;
  out.info = hom.class_info(g.winding);
  ClassCoordinates coords = hom.class_coordinates(g.winding);
  out.ambient = coords.ambient;
  out.free_pairings = coords.free_coords;
  out.torsion_coords = coords.torsion_coords;
  return out;
}

DDClass dd(const CechGerbe& g) {
  NerveHomology hom(g.nerve);
  return dd(g, hom);
}

std::optional<Cochain> is_trivial(const CechGerbe& g) {
  NerveHomology hom(g.nerve);
  ClassInfo info = hom.class_info(g.winding);
  if (!info.finite() || *info.order != 1) return std::nullopt;
  if (cocycle_violation(g.g, g.nerve) > 1e-8) return std::nullopt;
  return hom.solve_coboundary(g.g);
}

}  // namespace gerbelab
