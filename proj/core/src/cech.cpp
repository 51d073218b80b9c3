#include "gerbelab/cech.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gerbelab {

std::string to_string(Ring r) {
  switch (r) {
    case Ring::Int: return "Z";
    case Ring::Real: return "R";
    case Ring::Circle: return "R/Z";
  }
  return "?";
}

double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // rounding at the seam
  return f;
}

double circle_dist(double x) {
  double f = frac(x);
  return std::min(f, 1.0 - f);
}

Nerve::Nerve(int vertex_count, std::vector<std::vector<std::vector<int>>> simplices)
    : vertex_count_(vertex_count), simplices_(std::move(simplices)) {}

std::size_t Nerve::count(int degree) const {
  if (degree < 0 || degree > max_degree()) return 0;
  return simplices_[degree].size();
}

const std::vector<std::vector<int>>& Nerve::simplices(int degree) const {
  if (degree < 0 || degree > max_degree())
    throw std::invalid_argument("nerve: degree out of range");
  return simplices_[degree];
}

int Nerve::index_of(const std::vector<int>& tuple) const {
  int degree = static_cast<int>(tuple.size()) - 1;
  if (degree < 0 || degree > max_degree()) return -1;
  const auto& level = simplices_[degree];
  auto it = std::lower_bound(level.begin(), level.end(), tuple);
  if (it == level.end() || *it != tuple) return -1;
  return static_cast<int>(it - level.begin());
}

bool Nerve::same_as(const Nerve& other) const {
  return vertex_count_ == other.vertex_count_ && simplices_ == other.simplices_;
}

Nerve build_nerve(const Cover& cover, int max_degree) {
  if (max_degree < 3)
    throw std::invalid_argument("build_nerve: max_degree must be at least 3");
  if (cover.index_count < 1)
    throw std::invalid_argument("build_nerve: cover must have at least one set");
  if (!cover.overlaps)
    throw std::invalid_argument("build_nerve: cover has no intersection oracle");

  std::vector<std::vector<std::vector<int>>> levels(max_degree + 1);
  for (int v = 0; v < cover.index_count; ++v) {
    if (!cover.overlaps({v}))
      throw std::invalid_argument("build_nerve: cover set " + std::to_string(v) +
                                  " reported empty");
    levels[0].push_back({v});
  }

  for (int degree = 1; degree <= max_degree; ++degree) {
    const auto& below = levels[degree - 1];
    auto& here = levels[degree];
    Nerve partial(cover.index_count,
                  {levels.begin(), levels.begin() + degree});
    std::vector<int> candidate;
    for (const auto& simplex : below) {
      for (int v = simplex.back() + 1; v < cover.index_count; ++v) {
        candidate = simplex;
        candidate.push_back(v);
        if (!cover.overlaps(candidate)) continue;
        // all facets other than the extension base must already be present
        std::vector<int> facet(candidate.size() - 1);
        for (std::size_t omit = 0; omit + 1 < candidate.size(); ++omit) {
          std::size_t k = 0;
          for (std::size_t i = 0; i < candidate.size(); ++i)
            if (i != omit) facet[k++] = candidate[i];
          if (partial.index_of(facet) < 0)
            throw std::invalid_argument(
                "build_nerve: oracle violates downward closure at degree " +
                std::to_string(degree));
        }
        here.push_back(candidate);
      }
    }
    std::sort(here.begin(), here.end());
  }
  return Nerve(cover.index_count, std::move(levels));
}

Cochain Cochain::zeros(Ring ring, int degree, std::size_t n) {
  Cochain c;
  c.ring = ring;
  c.degree = degree;
  if (ring == Ring::Int)
    c.zvals.assign(n, 0);
  else
    c.rvals.assign(n, 0.0);
  return c;
}

static void check_sized(const Cochain& c, const Nerve& nerve) {
  if (c.degree < 0 || c.degree > nerve.max_degree())
    throw std::invalid_argument("cochain degree out of range for nerve");
  if (c.size() != nerve.count(c.degree))
    throw std::invalid_argument("cochain value count does not match nerve");
}

Cochain delta(const Cochain& c, const Nerve& nerve) {
  check_sized(c, nerve);
  int out_degree = c.degree + 1;
  if (out_degree > nerve.max_degree())
    throw std::invalid_argument("delta: degree overflow past the nerve cap");

  const auto& out_simps = nerve.simplices(out_degree);
  Cochain out = Cochain::zeros(c.ring, out_degree, out_simps.size());

  std::vector<int> face(out_degree);
  for (std::size_t s = 0; s < out_simps.size(); ++s) {
    const auto& simplex = out_simps[s];
    long long zsum = 0;
    double rsum = 0.0;
    for (int omit = 0; omit <= out_degree; ++omit) {
      int k = 0;
      for (int i = 0; i <= out_degree; ++i)
        if (i != omit) face[k++] = simplex[i];
      int idx = nerve.index_of(face);
      if (idx < 0) throw std::logic_error("delta: face missing from nerve");
      int sign = (omit % 2 == 0) ? 1 : -1;
      if (c.ring == Ring::Int)
        zsum += sign * c.zvals[idx];
      else
        rsum += sign * c.rvals[idx];
    }
    if (c.ring == Ring::Int)
      out.zvals[s] = zsum;
    else if (c.ring == Ring::Real)
      out.rvals[s] = rsum;
    else
      out.rvals[s] = frac(rsum);
  }
  return out;
}

double cocycle_violation(const Cochain& c, const Nerve& nerve) {
  Cochain d = delta(c, nerve);
  double worst = 0.0;
  if (d.ring == Ring::Int) {
    for (long long v : d.zvals) worst = std::max(worst, static_cast<double>(std::llabs(v)));
  } else if (d.ring == Ring::Real) {
    for (double v : d.rvals) worst = std::max(worst, std::abs(v));
  } else {
    for (double v : d.rvals) worst = std::max(worst, circle_dist(v));
  }
  return worst;
}

bool is_cocycle(const Cochain& c, const Nerve& nerve, double tol) {
  double worst = cocycle_violation(c, nerve);
  if (c.ring == Ring::Int) return worst == 0.0;
  return worst <= tol;
}

namespace detail {
int sort_sign(std::vector<int>& tuple) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < tuple.size(); ++i) {
    int v = tuple[i];
    std::size_t j = i;
    while (j > 0 && tuple[j - 1] > v) {
      tuple[j] = tuple[j - 1];
      --j;
      sign = -sign;
    }
    tuple[j] = v;
  }
  for (std::size_t i = 1; i < tuple.size(); ++i)
    if (tuple[i] == tuple[i - 1]) return 0;
  return sign;
}
}  // namespace detail

double evaluate_real(const Cochain& c, const Nerve& nerve, std::vector<int> tuple) {
  if (tuple.size() != static_cast<std::size_t>(c.degree) + 1)
    throw std::invalid_argument("evaluate: tuple length does not match degree");
  int sign = detail::sort_sign(tuple);
  if (sign == 0) return 0.0;
  int idx = nerve.index_of(tuple);
  if (idx < 0) throw std::invalid_argument("evaluate: tuple is not a nerve simplex");
  double v = c.ring == Ring::Int ? static_cast<double>(c.zvals[idx]) : c.rvals[idx];
  return sign * v;
}

long long evaluate_int(const Cochain& c, const Nerve& nerve, std::vector<int> tuple) {
  if (c.ring != Ring::Int)
    throw std::invalid_argument("evaluate_int: cochain is not integral");
  if (tuple.size() != static_cast<std::size_t>(c.degree) + 1)
    throw std::invalid_argument("evaluate: tuple length does not match degree");
  int sign = detail::sort_sign(tuple);
  if (sign == 0) return 0;
  int idx = nerve.index_of(tuple);
  if (idx < 0) throw std::invalid_argument("evaluate: tuple is not a nerve simplex");
  return sign * c.zvals[idx];
}

void require_simplicial_map(const Nerve& fine, const Nerve& coarse,
                            const std::vector<int>& vertex_map) {
  if (vertex_map.size() != static_cast<std::size_t>(fine.vertex_count()))
    throw std::invalid_argument("simplicial map: vertex map size mismatch");
  for (int v : vertex_map)
    if (v < 0 || v >= coarse.vertex_count())
      throw std::invalid_argument("simplicial map: image vertex out of range");
  std::vector<int> image;
  for (int degree = 1; degree <= fine.max_degree(); ++degree)
    for (const auto& simplex : fine.simplices(degree)) {
      image.clear();
      for (int v : simplex) image.push_back(vertex_map[v]);
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      if (coarse.index_of(image) < 0)
        throw std::invalid_argument(
            "simplicial map: a fine simplex lands outside the coarse nerve");
    }
}

Cochain pull_back(const Cochain& c, const Nerve& fine, const Nerve& coarse,
                  const std::vector<int>& vertex_map) {
  if (vertex_map.size() != static_cast<std::size_t>(fine.vertex_count()))
    throw std::invalid_argument("pull_back: vertex map size mismatch");
  const auto& simps = fine.simplices(c.degree);
  Cochain out = Cochain::zeros(c.ring, c.degree, simps.size());
  std::vector<int> image;
  for (std::size_t s = 0; s < simps.size(); ++s) {
    image.clear();
    for (int v : simps[s]) image.push_back(vertex_map[v]);
    int sign = detail::sort_sign(image);
    std::vector<int> support = image;
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (coarse.index_of(support) < 0)
      throw std::invalid_argument("pull_back: map does not send simplices into simplices");
    if (sign == 0) continue;  // degenerate image, value 0
    int idx = coarse.index_of(image);
    if (c.ring == Ring::Int)
      out.zvals[s] = sign * c.zvals[idx];
    else if (c.ring == Ring::Real)
      out.rvals[s] = sign * c.rvals[idx];
    else
      out.rvals[s] = frac(sign * c.rvals[idx]);
  }
  return out;
}

}  // namespace gerbelab
