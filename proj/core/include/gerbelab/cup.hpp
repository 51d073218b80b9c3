#pragma once

#include <functional>

#include "gerbelab/gerbe.hpp"
#include "gerbelab/rng.hpp"

namespace gerbelab::cup {

/// Element of the central extension U(1) x Z x U(1) of U(1) x Z, circle
/// components additive in [0,1).
struct ExtElement {
  double z = 0.0;
  long long n = 0;
  double w = 0.0;
};

/// Group product with the associative cocycle w1 + w2 + n2*z1.
ExtElement ext_multiply(const ExtElement& p, const ExtElement& q);

/// The printed variant with exponent n1 instead of n2; not associative,
/// kept so the discrepancy can be demonstrated.
ExtElement ext_multiply_printed(const ExtElement& p, const ExtElement& q);

/// Extension 2-cocycle of U(1) x Z underlying ext_multiply.
double u1xz_cocycle(const ExtElement& p, const ExtElement& q);

/// Alexander-Whitney cup product of integral cocycles on one nerve:
/// (a cup b)(v_0..v_{p+q}) = a(v_0..v_p) * b(v_p..v_{p+q}).
Cochain cup_product(const Cochain& a, const Cochain& b, const Nerve& nerve);

/// Gerbe with Dixmier-Douady class a cup b, for a an integral 2-cocycle
/// and b an integral 1-cocycle.  When a is a real coboundary delta(h) the
/// circle cochain (h cup b) mod 1 presents the class directly; otherwise
/// the class is carried by the winding cocycle.
CechGerbe cup_gerbe(const Cochain& a, const Cochain& b, const Nerve& nerve);

/// Principal-bundle transition data valued in U(1) x Z.  The circle
/// component of an honest non-flat bundle has no locally constant
/// presentation, so it is carried as sampled values plus its integral
/// winding 2-cocycle (the first Chern cocycle); flat data has zero winding
/// and an exactly closed circle part.
struct TransitionData {
  Cochain integer_part;    // Ring::Int, degree 1 cocycle
  Cochain circle_part;     // Ring::Circle, degree 1 sampled values
  Cochain circle_winding;  // Ring::Int, degree 2 cocycle

  static TransitionData flat(const Nerve& nerve, Cochain integer_part,
                             Cochain circle_part);
  static TransitionData winding(const Nerve& nerve, Cochain integer_part,
                                Cochain circle_winding);
};

/// Lifting bundle gerbe of a U(1) x Z bundle through the central extension:
/// g_abc = eps(t_ab, t_bc).  eps must satisfy the group 2-cocycle identity
/// (sampled check).  Transition data with nonzero circle winding is
/// supported for the u1xz extension, where the class is
/// cup(circle_winding, integer_part).
CechGerbe lifting_gerbe(const Nerve& nerve, const TransitionData& t,
                        const std::function<double(ExtElement, ExtElement)>& eps);

/// lifting_gerbe with the named u1xz extension cocycle.
CechGerbe lifting_gerbe_u1xz(const Nerve& nerve, const TransitionData& t);

/// Generator 2-cocycle on the octahedral nerve of S^2 (no 3-simplices, so
/// any 2-cochain is a cocycle): a single oriented face, sign fixed so the
/// pairing against the fundamental cocycle is +1.
Cochain hopf_cocycle(const Nerve& octa_nerve);

/// Winding generator on the circle nerve: value 1 on the wrap edge
/// oriented cyclically, i.e. -1 on the ordered edge (0, R-1).
Cochain winding_cocycle(const Nerve& circle_nerve, int resolution);

}  // namespace gerbelab::cup
