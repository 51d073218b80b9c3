#include "gerbelab/covers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gerbelab {

std::optional<Arc> intersect_arcs(const std::vector<Arc>& arcs) {
  if (arcs.empty()) return std::nullopt;
  for (const Arc& a : arcs)
    if (a.len <= 0.0 || a.len >= 1.0)
      throw std::invalid_argument("intersect_arcs: arcs must have length in (0, 1)");
  double lo = arcs[0].lo, hi = arcs[0].hi();
  for (std::size_t k = 1; k < arcs.size(); ++k) {
    // align the k-th representative with the running window by an integer
    // shift; two workable shifts mean the circle intersection is
    // disconnected, which a good cover never produces
    double centre = (lo + hi) / 2.0 - (arcs[k].lo + arcs[k].hi()) / 2.0;
    double base = std::round(centre);
    double blo = 0.0, bhi = 0.0;
    int hits = 0;
    for (double s : {base - 1.0, base, base + 1.0}) {
      double alo = std::max(lo, arcs[k].lo + s), ahi = std::min(hi, arcs[k].hi() + s);
      if (alo < ahi) {
        ++hits;
        blo = alo;
        bhi = ahi;
      }
    }
    if (hits == 0) return std::nullopt;
    if (hits > 1)
      throw std::domain_error("intersect_arcs: disconnected circle intersection");
    lo = blo;
    hi = bhi;
  }
  return Arc{lo, hi - lo};
}

std::vector<Arc> circle_arcs(int resolution, double margin) {
  if (resolution < 3)
    throw std::invalid_argument("circle_arcs: at least three arcs are needed");
  if (margin <= 0.0 || margin >= 1.0 / (2.0 * resolution))
    throw std::invalid_argument("circle_arcs: margin must lie in (0, 1/(2R))");
  std::vector<Arc> arcs(resolution);
  for (int a = 0; a < resolution; ++a) {
    arcs[a].lo = static_cast<double>(a) / resolution - margin;
    arcs[a].len = 1.0 / resolution + 2.0 * margin;
  }
  return arcs;
}

double default_margin(int resolution) { return 0.25 / (2.0 * resolution); }

int ArcProduct::index_count() const {
  int count = 1;
  for (int d = 0; d < dimension; ++d) count *= resolution;
  return count;
}

std::vector<Arc> ArcProduct::box(int index) const {
  std::vector<Arc> arcs = circle_arcs(resolution, margin);
  std::vector<Arc> out(dimension);
  for (int d = dimension - 1; d >= 0; --d) {
    out[d] = arcs[index % resolution];
    index /= resolution;
  }
  return out;
}

Cover ArcProduct::cover() const {
  std::vector<Arc> arcs = circle_arcs(resolution, margin);
  Cover cover;
  cover.index_count = index_count();
  cover.geometry = (dimension == 1 ? "arcs:" : "boxes:") + std::to_string(resolution);
  int res = resolution, dim = dimension;
  cover.overlaps = [arcs, res, dim](const std::vector<int>& subset) {
    std::vector<Arc> coordinate;
    for (int d = 0; d < dim; ++d) {
      coordinate.clear();
      int div = 1;
      for (int k = d + 1; k < dim; ++k) div *= res;
      for (int index : subset) coordinate.push_back(arcs[(index / div) % res]);
      if (!intersect_arcs(coordinate)) return false;
    }
    return true;
  };
  return cover;
}

Cover circle_arc_cover(int resolution, double margin) {
  return ArcProduct{resolution, margin, 1}.cover();
}

Cover torus_box_cover(int resolution, double margin) {
  return ArcProduct{resolution, margin, 3}.cover();
}

Overlay overlay_cover(const ArcProduct& a, const ArcProduct& b) {
  if (a.dimension != b.dimension)
    throw std::invalid_argument("overlay_cover: covers live over different bases");
  const int dim = a.dimension;
  Overlay out;
  std::vector<std::vector<Arc>> boxes;
  for (int i = 0; i < a.index_count(); ++i) {
    std::vector<Arc> box_a = a.box(i);
    for (int j = 0; j < b.index_count(); ++j) {
      std::vector<Arc> box_b = b.box(j);
      std::vector<Arc> joint(dim);
      bool nonempty = true;
      for (int d = 0; d < dim && nonempty; ++d) {
        auto cap = intersect_arcs({box_a[d], box_b[d]});
        if (!cap)
          nonempty = false;
        else
          joint[d] = *cap;
      }
      if (!nonempty) continue;
      out.to_a.push_back(i);
      out.to_b.push_back(j);
      boxes.push_back(std::move(joint));
    }
  }
  out.cover.index_count = static_cast<int>(boxes.size());
  out.cover.geometry = "overlay";
  out.cover.overlaps = [boxes = std::move(boxes), dim](const std::vector<int>& subset) {
    std::vector<Arc> coordinate;
    for (int d = 0; d < dim; ++d) {
      coordinate.clear();
      for (int index : subset) coordinate.push_back(boxes[index][d]);
      if (!intersect_arcs(coordinate)) return false;
    }
    return true;
  };
  return out;
}

std::array<Arc, 3> torus_box(int resolution, double margin, int index) {
  std::vector<Arc> arcs = circle_arcs(resolution, margin);
  int a3 = index % resolution;
  int a2 = (index / resolution) % resolution;
  int a1 = index / (resolution * resolution);
  return {arcs[a1], arcs[a2], arcs[a3]};
}

Cover star_cover(int vertex_count, std::vector<std::vector<int>> faces,
                 std::string name) {
  // stars of vertices intersect exactly when the vertices span a face
  std::set<std::vector<int>> closure;
  std::vector<int> sub;
  for (auto& f : faces) {
    std::sort(f.begin(), f.end());
    int n = static_cast<int>(f.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      sub.clear();
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) sub.push_back(f[i]);
      closure.insert(sub);
    }
  }
  Cover cover;
  cover.index_count = vertex_count;
  cover.geometry = "star:" + name;
  cover.overlaps = [closure = std::move(closure)](const std::vector<int>& subset) {
    return closure.count(subset) > 0;
  };
  return cover;
}

Cover octahedron_cover() {
  // vertices 0..5, antipodal pairs (0,5), (1,4), (2,3)
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k) {
        auto antipodal = [](int a, int b) { return a + b == 5; };
        if (!antipodal(i, j) && !antipodal(i, k) && !antipodal(j, k))
          faces.push_back({i, j, k});
      }
  return star_cover(6, std::move(faces), "octahedron");
}

Cover rp2_cover() {
  // minimal 6-vertex triangulation of the projective plane
  std::vector<std::vector<int>> faces = {{0, 1, 4}, {0, 1, 5}, {0, 2, 3}, {0, 2, 5},
                                         {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 5},
                                         {2, 4, 5}, {3, 4, 5}};
  return star_cover(6, std::move(faces), "rp2");
}

Cover product_cover(const Cover& a, const Cover& b) {
  Cover cover;
  cover.index_count = a.index_count * b.index_count;
  cover.geometry = "product(" + a.geometry + "," + b.geometry + ")";
  int b_count = b.index_count;
  cover.overlaps = [=](const std::vector<int>& subset) {
    std::vector<int> left, right;
    for (int index : subset) {
      left.push_back(index / b_count);
      right.push_back(index % b_count);
    }
    auto dedup = [](std::vector<int>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(left);
    dedup(right);
    return a.overlaps(left) && b.overlaps(right);
  };
  return cover;
}

std::vector<int> arc_refinement_map(int fine_resolution, double fine_margin,
                                    int coarse_resolution, double coarse_margin,
                                    int dimension) {
  std::vector<Arc> fine = circle_arcs(fine_resolution, fine_margin);
  std::vector<Arc> coarse = circle_arcs(coarse_resolution, coarse_margin);
  std::vector<int> arc_map(fine_resolution, -1);
  for (int f = 0; f < fine_resolution; ++f) {
    for (int c = 0; c < coarse_resolution; ++c) {
      for (double shift : {-1.0, 0.0, 1.0}) {
        if (fine[f].lo >= coarse[c].lo + shift &&
            fine[f].hi() <= coarse[c].hi() + shift) {
          arc_map[f] = c;
          break;
        }
      }
      if (arc_map[f] >= 0) break;
    }
    if (arc_map[f] < 0)
      throw std::invalid_argument(
          "arc_refinement_map: fine arc " + std::to_string(f) +
          " is not contained in any coarse arc");
  }
  int fine_count = 1;
  for (int d = 0; d < dimension; ++d) fine_count *= fine_resolution;
  std::vector<int> vertex_map(fine_count);
  std::vector<int> digits(dimension);
  for (int index = 0; index < fine_count; ++index) {
    int rem = index, out = 0;
    for (int d = dimension - 1; d >= 0; --d) {
      digits[d] = rem % fine_resolution;
      rem /= fine_resolution;
    }
    for (int d = 0; d < dimension; ++d) out = out * coarse_resolution + arc_map[digits[d]];
    vertex_map[index] = out;
  }
  return vertex_map;
}

}  // namespace gerbelab
