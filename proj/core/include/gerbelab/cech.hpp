#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gerbelab {

/// Coefficient ring of a cochain.  Circle values are stored additively in
/// [0,1); the multiplicative circle statement "delta(c) = 1" becomes
/// "delta(c) == 0 mod 1" throughout.
enum class Ring { Int, Real, Circle };

std::string to_string(Ring r);

/// Reduce a real number to its canonical circle representative in [0,1).
double frac(double x);

/// Distance from x to the nearest integer (circle distance to zero).
double circle_dist(double x);

/// A finite cover given by an intersection oracle on sorted index subsets.
/// The oracle must be downward closed: if a subset has nonempty
/// intersection, so does every subset of it.  `build_nerve` verifies this
/// while enumerating and rejects covers that lie.
struct Cover {
  int index_count = 0;
  std::string geometry = "abstract";
  std::function<bool(const std::vector<int>&)> overlaps;
};

/// Nerve of a cover: for each degree p the strictly increasing (p+1)-index
/// tuples with nonempty intersection, in lexicographic order.
class Nerve {
 public:
  Nerve() = default;
  Nerve(int vertex_count, std::vector<std::vector<std::vector<int>>> simplices);

  int vertex_count() const { return vertex_count_; }
  int max_degree() const { return static_cast<int>(simplices_.size()) - 1; }
  std::size_t count(int degree) const;
  const std::vector<std::vector<int>>& simplices(int degree) const;

  /// Position of a strictly increasing tuple among its degree, or -1.
  int index_of(const std::vector<int>& tuple) const;

  bool same_as(const Nerve& other) const;

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<std::vector<int>>> simplices_;
};

/// Enumerate all simplices of degree <= max_degree.  Throws
/// std::invalid_argument if the oracle violates downward closure or if
/// max_degree < 3.
Nerve build_nerve(const Cover& cover, int max_degree = 4);

/// Degree-p cochain with one value per degree-p simplex.  Values on
/// permuted tuples are defined by the permutation sign; only strictly
/// increasing tuples are stored.
struct Cochain {
  int degree = 0;
  Ring ring = Ring::Int;
  std::vector<long long> zvals;  // Ring::Int
  std::vector<double> rvals;     // Ring::Real / Ring::Circle

  std::size_t size() const {
    return ring == Ring::Int ? zvals.size() : rvals.size();
  }

  static Cochain zeros(Ring ring, int degree, std::size_t n);
};

/// Simplicial coboundary: (delta c)(a_0..a_{p+1}) = sum_i (-1)^i c(..omit i..),
/// reduced to [0,1) for circle cochains.
Cochain delta(const Cochain& c, const Nerve& nerve);

/// True iff every component of delta(c) vanishes: exactly for Int, within
/// tol of an integer for Circle, within tol of zero for Real.
bool is_cocycle(const Cochain& c, const Nerve& nerve, double tol = 1e-10);

/// Largest deviation of delta(c) from zero in the sense of is_cocycle.
double cocycle_violation(const Cochain& c, const Nerve& nerve);

/// Find q with delta(q) = g (exactly over Int; mod 1 for Circle, decided
/// exactly through the integer lift + Smith normal form).  Requires
/// is_cocycle(g); returns nullopt when g is not a coboundary.
std::optional<Cochain> solve_coboundary(const Cochain& g, const Nerve& nerve);

/// Antisymmetrized evaluation on an arbitrary index tuple: 0 on repeated
/// indices, otherwise sign(sort) * stored value.  Tuple must name a nerve
/// simplex after sorting.
double evaluate_real(const Cochain& c, const Nerve& nerve, std::vector<int> tuple);
long long evaluate_int(const Cochain& c, const Nerve& nerve, std::vector<int> tuple);

/// Pull a cochain back along a vertex map fine -> coarse.  Every fine
/// simplex must map into a coarse simplex (repeats collapse to zero in
/// positive degree); otherwise throws std::invalid_argument.
Cochain pull_back(const Cochain& c, const Nerve& fine, const Nerve& coarse,
                  const std::vector<int>& vertex_map);

/// Throws std::invalid_argument unless every simplex of `fine` maps to a
/// simplex of `coarse` under the vertex map.
void require_simplicial_map(const Nerve& fine, const Nerve& coarse,
                            const std::vector<int>& vertex_map);

namespace detail {
/// sign of the permutation sorting `tuple` in place; 0 if repeats occur.
int sort_sign(std::vector<int>& tuple);
}  // namespace detail

}  // namespace gerbelab
