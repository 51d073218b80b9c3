#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gerbelab/cech.hpp"

namespace gerbelab {

/// Circular arc with representative interval [lo, lo+len) in R, len < 1.
struct Arc {
  double lo = 0.0;
  double len = 0.0;
  double hi() const { return lo + len; }
};

/// Common intersection of a set of short arcs (all lengths < 1/2) as an
/// interval in the universal cover, aligned to the first arc's
/// representative.  nullopt when empty.
std::optional<Arc> intersect_arcs(const std::vector<Arc>& arcs);

/// R equal arcs covering the circle, arc a = (a/R - margin, (a+1)/R + margin).
/// margin must keep the cover good (pairwise overlaps connected, no deeper
/// overlap than the cyclic adjacencies allow).
std::vector<Arc> circle_arcs(int resolution, double margin);

/// Cover of a torus power by products of arcs: index digits are the arc
/// numbers per coordinate, most significant first.
struct ArcProduct {
  int resolution = 3;
  double margin = 0.04;
  int dimension = 1;

  int index_count() const;
  Cover cover() const;
  std::vector<Arc> box(int index) const;  // one arc per coordinate
};

/// Cover of S^1 by `resolution` arcs.  Index = arc number.
Cover circle_arc_cover(int resolution, double margin);

/// Cover of T^3 by products of arcs, one factor per coordinate.  Index of
/// box (a1,a2,a3) is a1*R^2 + a2*R + a3.
Cover torus_box_cover(int resolution, double margin);

/// Default margin used by the torus pipeline for a given resolution.
double default_margin(int resolution);

/// Arc triple of a torus box index.
std::array<Arc, 3> torus_box(int resolution, double margin, int index);

/// Same-base common refinement {U_i intersect V_j} of two arc-product
/// covers, restricted to the nonempty pairs, with the two projection maps.
struct Overlay {
  Cover cover;
  std::vector<int> to_a, to_b;
};
Overlay overlay_cover(const ArcProduct& a, const ArcProduct& b);

/// Open-star cover of an abstract simplicial complex given by its maximal
/// faces; the nerve of the star cover is the complex itself.
Cover star_cover(int vertex_count, std::vector<std::vector<int>> faces,
                 std::string name);

/// Boundary of the octahedron: 6 vertices, antipodal pairs (0,5), (1,4),
/// (2,3); a good cover of S^2.
Cover octahedron_cover();

/// Minimal 6-vertex triangulation of the real projective plane.
Cover rp2_cover();

/// Product of two covers (cover of the product space); index of (i, j) is
/// i * b.index_count + j.
Cover product_cover(const Cover& a, const Cover& b);

/// Vertex map of a refinement between arc-product covers of the same
/// torus/circle: each fine box must be contained in some coarse box
/// (smallest such index).  Throws when containment fails.
std::vector<int> arc_refinement_map(int fine_resolution, double fine_margin,
                                    int coarse_resolution, double coarse_margin,
                                    int dimension);

}  // namespace gerbelab
