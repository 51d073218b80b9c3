#include <doctest.h>

#include <cmath>

#include "gerbelab/rng.hpp"
#include "gerbelab/torus.hpp"

using namespace gerbelab;
using namespace gerbelab::torus;

namespace {

FiberTuple offset_tuple(const TorusPoint& base,
                        const std::vector<std::array<double, 3>>& offsets) {
  FiberTuple t;
  t.points.push_back(base);
  for (const auto& o : offsets) {
    TorusPoint p = base;
    for (int c = 0; c < 3; ++c) p.x[c] += o[c];
    t.points.push_back(p);
  }
  return t;
}

FiberTuple random_tuple(int points, Rng& rng) {
  TorusPoint base{{rng.uniform(), rng.uniform(), rng.uniform()}};
  FiberTuple t;
  t.points.push_back(base);
  for (int k = 1; k < points; ++k) {
    TorusPoint p = base;
    for (int c = 0; c < 3; ++c) p.x[c] += static_cast<double>(rng.uniform_int(-3, 3));
    t.points.push_back(p);
  }
  return t;
}

}  // namespace

TEST_CASE("gamma on pinned tuples") {
  TorusPoint base{{0.3, 0.4, 0.7}};
  SUBCASE("coincident points vanish") {
    FiberTuple t = offset_tuple(base, {{0, 0, 0}, {0, 0, 0}});
    CHECK(gamma(t) == 0.0);
  }
  SUBCASE("the printed value") {
    FiberTuple t = offset_tuple(base, {{1, 2, 0}, {0, 1, 1}});
    CHECK(gamma(t) == doctest::Approx(-1.4).epsilon(1e-12));
    CHECK(frac(gamma(t)) == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("tuples off the fibre are rejected") {
    FiberTuple t;
    t.points = {TorusPoint{{0, 0, 0}}, TorusPoint{{0.5, 0, 0}}, TorusPoint{{1, 0, 0}}};
    CHECK_THROWS_AS(gamma(t), std::invalid_argument);
  }
}

TEST_CASE("delta gamma: alternating sum, closed form, integrality") {
  TorusPoint base{{0.3, 0.4, 0.7}};
  SUBCASE("coincident quadruple") {
    FiberTuple t = offset_tuple(base, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK(delta_gamma(t) == 0.0);
  }
  SUBCASE("the worked example sums to zero") {
    FiberTuple t = offset_tuple(base, {{1, 2, 0}, {0, 1, 1}, {1, 1, 1}});
    CHECK(delta_gamma(t) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("a quadruple with all three factors alive") {
    // (w-z)^1 (z-y)^2 (y-x)^3 = 1 * 1 * 1
    FiberTuple t = offset_tuple(TorusPoint{{0.2, 0.9, 0.4}},
                                {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    CHECK(delta_gamma(t) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("a thousand random integer-offset tuples") {
    for (int s = 0; s < 1000; ++s) {
      Rng rng = Rng::stream(29, "test", "delta-gamma", s);
      double v = delta_gamma(random_tuple(4, rng));
      CHECK(std::abs(v - std::round(v)) < 1e-9);
    }
  }
}

TEST_CASE("connection form at pinned tuples") {
  TorusPoint base{{0.3, 0.4, 0.7}};
  SUBCASE("equal points give the zero form") {
    FiberTuple t = offset_tuple(base, {{0, 0, 0}});
    LatticeForm a = connection_a(t);
    CHECK(a.max_abs() == 0.0);
  }
  SUBCASE("printed coefficient on theta3") {
    FiberTuple t = offset_tuple(base, {{1, 2, 0}});
    LatticeForm a = connection_a(t);
    CHECK(a.comps[0] == 0.0);
    CHECK(a.comps[1] == 0.0);
    CHECK(a.comps[2] == doctest::Approx(0.4).epsilon(1e-12));
  }
}

TEST_CASE("connective structure identities hold everywhere sampled") {
  SUBCASE("delta(A) = d(gamma) at the worked tuple") {
    FiberTuple t = offset_tuple(TorusPoint{{0.3, 0.4, 0.7}}, {{1, 2, 0}, {0, 1, 1}});
    CHECK(check_connection(t) < 1e-12);
  }
  SUBCASE("delta(A) = d(gamma) on random tuples") {
    for (int s = 0; s < 200; ++s) {
      Rng rng = Rng::stream(31, "test", "connection", s);
      CHECK(check_connection(random_tuple(3, rng)) < 1e-10);
    }
  }
  SUBCASE("delta(f) = dA on random tuples") {
    for (int s = 0; s < 200; ++s) {
      Rng rng = Rng::stream(31, "test", "curving", s);
      CHECK(check_curving(random_tuple(2, rng)) < 1e-10);
    }
  }
}

TEST_CASE("curving and curvature") {
  SUBCASE("curving coefficient is x1") {
    LatticeForm f = curving_f(TorusPoint{{0.3, 0.9, 0.1}});
    CHECK(f.comps[2] == doctest::Approx(0.3).epsilon(1e-15));  // theta2^theta3
    CHECK(f.comps[0] == 0.0);
    LatticeForm zero = curving_f(TorusPoint{{0.0, 0.5, 0.5}});
    CHECK(zero.max_abs() == 0.0);
  }
  SUBCASE("three-curvature is the unit volume form") {
    LatticeForm omega = three_curvature();
    CHECK(omega.degree == 3);
    CHECK(omega.comps[0] == 1.0);
  }
  SUBCASE("df matches omega pointwise") {
    for (int s = 0; s < 100; ++s) {
      Rng rng = Rng::stream(31, "test", "df", s);
      TorusPoint p{{rng.uniform(), rng.uniform(), rng.uniform()}};
      CHECK(check_df(p) < 1e-12);
    }
  }
  SUBCASE("the normalized integral is exactly one at every grid") {
    for (int grid : {1, 2, 3, 8, 17}) CHECK(integrate_three_curvature(grid) == 1.0);
  }
  SUBCASE("tensor powers scale the integral") {
    CHECK(integrate_three_curvature(8, 3.0) == 3.0);
  }
}

TEST_CASE("section machinery of the box cover") {
  ArcProduct cover = box_cover(3);
  Nerve nerve = build_nerve(cover.cover(), 4);

  SUBCASE("offsets satisfy the cocycle condition on every triangle") {
    for (const auto& tri : nerve.simplices(2)) {
      auto oab = section_offset(cover, tri[0], tri[1]);
      auto obc = section_offset(cover, tri[1], tri[2]);
      auto oac = section_offset(cover, tri[0], tri[2]);
      for (int c = 0; c < 3; ++c) CHECK(oab[c] + obc[c] == oac[c]);
    }
  }
  SUBCASE("sections lift overlap midpoints into their boxes") {
    for (const auto& edge : nerve.simplices(1)) {
      TorusPoint base = overlap_midpoint(cover, edge);
      TorusPoint sa = section(cover, edge[0], base);
      TorusPoint sb = section(cover, edge[1], base);
      auto offset = section_offset(cover, edge[0], edge[1]);
      for (int c = 0; c < 3; ++c) {
        CHECK(std::abs(sb.x[c] - sa.x[c] - static_cast<double>(offset[c])) < 1e-12);
        CHECK(circle_dist(sa.x[c] - base.x[c]) < 1e-12);
      }
    }
  }
}

TEST_CASE("the torus gerbe carries the generator of H^3") {
  CechGerbe gerbe = cech_cocycle(3);
  REQUIRE(gerbe.nerve.count(0) == 27);
  CHECK(is_cocycle(gerbe.winding, gerbe.nerve));

  NerveHomology hom(gerbe.nerve);
  DDClass cls = dd(gerbe, hom);
  CHECK_FALSE(cls.info.finite());
  CHECK(cls.ambient.free_rank == 1);
  REQUIRE(cls.free_pairings.size() == 1);
  CHECK(std::llabs(cls.free_pairings[0]) == 1);
  CHECK_FALSE(is_trivial(gerbe).has_value());

  SUBCASE("winding values match delta(gamma) on section tuples") {
    ArcProduct cover = box_cover(3);
    const auto& tets = gerbe.nerve.simplices(3);
    for (std::size_t s = 0; s < tets.size(); s += 7) {
      TorusPoint base = overlap_midpoint(cover, tets[s]);
      FiberTuple t;
      for (int v : tets[s]) t.points.push_back(section(cover, v, base));
      CHECK(delta_gamma(t) ==
            doctest::Approx(static_cast<double>(gerbe.winding.zvals[s])).epsilon(1e-12));
    }
  }

  SUBCASE("the same class at resolution 4 and under refinement") {
    const double fine_margin = 1.0 / 48.0;
    const double coarse_margin = 1.0 / 3.0 - 1.0 / 4.0 + 2.5 * fine_margin;
    CechGerbe coarse = cech_cocycle(3, coarse_margin);
    CechGerbe fine = cech_cocycle(4, fine_margin);
    std::vector<int> map = arc_refinement_map(4, fine_margin, 3, coarse_margin, 3);
    CechGerbe pulled = refine(coarse, fine.nerve, map);

    NerveHomology fine_hom(fine.nerve);
    Cochain diff = pulled.winding;
    for (std::size_t i = 0; i < diff.zvals.size(); ++i)
      diff.zvals[i] -= fine.winding.zvals[i];
    CHECK(fine_hom.class_info(diff).is_coboundary);

    ClassCoordinates fine_coords = fine_hom.class_coordinates(fine.winding);
    REQUIRE(fine_coords.free_coords.size() == 1);
    CHECK(std::llabs(fine_coords.free_coords[0]) == 1);
  }
}

TEST_CASE("sampled circle data reduces gamma mod 1") {
  CechGerbe gerbe = cech_cocycle(3);
  for (double v : gerbe.g.rvals) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  // at least one triple overlap sees a genuinely fractional sample
  bool fractional = false;
  for (double v : gerbe.g.rvals)
    if (circle_dist(v) > 1e-6) fractional = true;
  CHECK(fractional);
}

TEST_CASE("resolution below three is rejected") {
  CHECK_THROWS_AS(cech_cocycle(2), std::invalid_argument);
}
