#pragma once

#include <optional>

#include "gerbelab/cech.hpp"
#include "gerbelab/covers.hpp"
#include "gerbelab/homology.hpp"

namespace gerbelab {

/// A bundle gerbe presented over a finite good cover.
///
/// `g` is the circle-valued 2-cochain of the presentation.  `winding` is
/// the integral 3-cocycle recording the coboundary of the continuous local
/// lifts of the underlying U(1)-valued cocycle; its class is the
/// Dixmier-Douady class.  When the cocycle is locally constant (every gerbe
/// built through `from_cocycle`), winding = delta(lift of g), i.e. the
/// Bockstein image of g, and nothing is carried beyond the classic circle
/// presentation.  Locally constant circle data can only reach torsion
/// classes, so constructions with non-torsion classes (the torus gerbe, cup
/// and lifting gerbes with free factors) supply the winding cocycle from
/// their section data and keep g as sampled values.
struct CechGerbe {
  Nerve nerve;
  Cochain g;        // Ring::Circle, degree 2
  Cochain winding;  // Ring::Int, degree 3, cocycle
};

struct DDClass {
  Cochain cocycle;  // integral degree-3 representative
  ClassInfo info;
  CohomologyGroup ambient;
  std::vector<long long> free_pairings;
  std::vector<long long> torsion_coords;
};

/// Gerbe with locally constant cocycle g; winding = bockstein(g).
/// Rejects g whose coboundary does not vanish mod 1 (reports the largest
/// violation), since associativity of the induced product is exactly the
/// cocycle condition.
CechGerbe from_cocycle(const Nerve& nerve, const Cochain& g, double tol = 1e-10);

/// Gerbe of an open-cover presentation of an integral 3-cocycle class:
/// sampled circle data is zero, winding = z.
CechGerbe from_dd_cocycle(const Nerve& nerve, const Cochain& z);

CechGerbe dual(const CechGerbe& g);

/// Reduced tensor product: same nerve, cocycles add.
CechGerbe tensor_reduced(const CechGerbe& a, const CechGerbe& b);

/// Tensor product over (possibly) distinct covers of the same base: both
/// factors pull back to the common refinement by pairwise intersections.
/// Identical nerves short-circuit to the reduced product (the diagonal of
/// the self-refinement).  Distinct covers are supported for arc products.
CechGerbe tensor(const CechGerbe& a, const ArcProduct& cover_a,
                 const CechGerbe& b, const ArcProduct& cover_b);

/// Pull back along a refinement vertex map (fine index -> coarse index).
CechGerbe refine(const CechGerbe& g, const Nerve& fine,
                 const std::vector<int>& vertex_map);

/// Trivialization q with delta(q) = g mod 1, present iff the DD class has
/// order 1 and the circle coboundary equation is solvable.
std::optional<Cochain> is_trivial(const CechGerbe& g);

DDClass dd(const CechGerbe& g);

/// dd() against a shared homology cache, for batches on one nerve.
DDClass dd(const CechGerbe& g, NerveHomology& hom);

}  // namespace gerbelab
