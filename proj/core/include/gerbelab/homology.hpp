#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gerbelab/cech.hpp"
#include "gerbelab/intmat.hpp"

namespace gerbelab {

/// H^k as free rank plus torsion factors in divisibility order.
struct CohomologyGroup {
  long long free_rank = 0;
  std::vector<long long> torsion_factors;

  bool operator==(const CohomologyGroup&) const = default;
};

/// Verdict on a single integral cocycle class.  order is the least n >= 1
/// with n*z a coboundary; nullopt means infinite order.
struct ClassInfo {
  bool is_coboundary = false;
  std::optional<long long> order;

  bool finite() const { return order.has_value(); }
};

/// Coordinates of a cocycle class in the SNF-adapted presentation of H^k:
/// one integer per torsion factor (reduced mod the factor) and one per free
/// generator.  The free coordinates are the pairings against the
/// fundamental cocycles of the nerve.
struct ClassCoordinates {
  CohomologyGroup ambient;
  std::vector<long long> torsion_coords;
  std::vector<long long> free_coords;
};

/// Matrix of delta: C^p -> C^{p+1}; rows indexed by (p+1)-simplices.
IntMatrix coboundary_matrix(const Nerve& nerve, int degree);

CohomologyGroup cohomology(const Nerve& nerve, int degree);

ClassInfo class_info(const Cochain& z, const Nerve& nerve);

ClassCoordinates class_coordinates(const Cochain& z, const Nerve& nerve);

/// Connecting map of 0 -> Z -> R -> R/Z -> 0: lift g to representatives in
/// [0,1) and return delta(lift), an integral cocycle one degree up.  Throws
/// std::domain_error if delta(lift) strays more than 1e-6 from integers
/// (g was not a circle cocycle).
Cochain bockstein(const Cochain& g, const Nerve& nerve);

/// Same with a caller-supplied integer shift of the canonical lift, for
/// re-lift well-definedness checks.
Cochain bockstein_with_lift(const Cochain& g, const Nerve& nerve,
                            std::span<const long long> lift_shift);

/// Caches coboundary matrices and their Smith forms per degree so that
/// batches of class queries on one nerve pay for each SNF once.  All
/// public free functions above are one-shot wrappers over this.
class NerveHomology {
 public:
  explicit NerveHomology(const Nerve& nerve) : nerve_(&nerve) {}

  const Nerve& nerve() const { return *nerve_; }
  const IntMatrix& matrix(int degree);
  const SnfResult& snf(int degree);

  CohomologyGroup cohomology(int degree);
  ClassInfo class_info(const Cochain& z);
  ClassCoordinates class_coordinates(const Cochain& z);
  std::optional<Cochain> solve_coboundary(const Cochain& g);

 private:
  struct Quotient;  // kernel basis + image presentation for one degree
  const Quotient& quotient(int degree);

  const Nerve* nerve_;
  std::map<int, IntMatrix> matrices_;
  std::map<int, SnfResult> snfs_;
  std::map<int, std::shared_ptr<Quotient>> quotients_;
};

}  // namespace gerbelab
