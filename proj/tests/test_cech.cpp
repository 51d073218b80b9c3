#include <doctest.h>

#include "gerbelab/cech.hpp"
#include "gerbelab/covers.hpp"
#include "gerbelab/homology.hpp"
#include "gerbelab/rng.hpp"
#include "oracles.hpp"

using namespace gerbelab;

namespace {

Cochain random_cochain(Ring ring, int degree, const Nerve& nerve, Rng& rng) {
  Cochain c = Cochain::zeros(ring, degree, nerve.count(degree));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (ring == Ring::Int)
      c.zvals[i] = rng.uniform_int(-9, 9);
    else if (ring == Ring::Real)
      c.rvals[i] = rng.uniform(-1.0, 1.0);
    else
      c.rvals[i] = rng.uniform();
  }
  return c;
}

}  // namespace

TEST_CASE("three arcs on the circle: 3 vertices, 3 edges, no triangles") {
  Nerve nerve = build_nerve(circle_arc_cover(3, 0.05));
  CHECK(nerve.count(0) == 3);
  CHECK(nerve.count(1) == 3);
  CHECK(nerve.count(2) == 0);
  CHECK(nerve.simplices(1) ==
        std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("a single set gives one vertex and nothing above") {
  Cover point;
  point.index_count = 1;
  point.overlaps = [](const std::vector<int>&) { return true; };
  Nerve nerve = build_nerve(point);
  CHECK(nerve.count(0) == 1);
  CHECK(nerve.count(1) == 0);
}

TEST_CASE("torus box nerve matches brute-force subset enumeration") {
  ArcProduct cover{3, default_margin(3), 3};
  Nerve nerve = build_nerve(cover.cover(), 4);
  CHECK(nerve.count(0) == 27);
  CHECK(nerve.count(1) == 351);  // every pair of boxes meets at resolution 3

  auto brute = oracles::brute_force_arc_nerve(cover, 4);
  for (int degree = 0; degree <= 4; ++degree) {
    REQUIRE(nerve.count(degree) == brute[degree].size());
    CHECK(nerve.simplices(degree) == brute[degree]);
  }
}

TEST_CASE("four-arc circle nerve is the 4-cycle") {
  Nerve nerve = build_nerve(circle_arc_cover(4, 0.03));
  CHECK(nerve.count(0) == 4);
  CHECK(nerve.count(1) == 4);  // only cyclically adjacent arcs meet
  CHECK(nerve.count(2) == 0);
  CHECK(nerve.index_of({0, 2}) == -1);
  CHECK(nerve.index_of({0, 3}) >= 0);
}

TEST_CASE("build_nerve rejects an oracle that violates downward closure") {
  Cover liar;
  liar.index_count = 3;
  liar.overlaps = [](const std::vector<int>& s) {
    if (s == std::vector<int>{0, 2}) return false;  // pair empty ...
    return true;                                    // ... but triple claims not
  };
  CHECK_THROWS_AS(build_nerve(liar), std::invalid_argument);
}

TEST_CASE("coboundary of a 0-cochain on the circle nerve") {
  Nerve nerve = build_nerve(circle_arc_cover(3, 0.05));
  Cochain v = Cochain::zeros(Ring::Int, 0, 3);
  v.zvals = {0, 1, 0};
  Cochain d = delta(v, nerve);
  CHECK(d.zvals == std::vector<long long>{1, 0, -1});

  SUBCASE("constant cochains die") {
    Cochain k = Cochain::zeros(Ring::Int, 0, 3);
    k.zvals = {7, 7, 7};
    Cochain dk = delta(k, nerve);
    CHECK(dk.zvals == std::vector<long long>{0, 0, 0});
  }
}

TEST_CASE("delta of delta vanishes in every ring") {
  std::vector<Nerve> nerves;
  nerves.push_back(build_nerve(octahedron_cover()));
  nerves.push_back(build_nerve(rp2_cover()));
  nerves.push_back(build_nerve(torus_box_cover(3, default_margin(3))));
  for (const Nerve& nerve : nerves)
    for (Ring ring : {Ring::Int, Ring::Real, Ring::Circle})
      for (int s = 0; s < 100; ++s) {
        Rng rng = Rng::stream(42, "test", "delta-delta", s * 3 + static_cast<int>(ring));
        int degree = static_cast<int>(rng.uniform_int(0, nerve.max_degree() - 2));
        Cochain c = random_cochain(ring, degree, nerve, rng);
        Cochain dd = delta(delta(c, nerve), nerve);
        if (ring == Ring::Int) {
          for (long long v : dd.zvals) CHECK(v == 0);
        } else if (ring == Ring::Real) {
          for (double v : dd.rvals) CHECK(std::abs(v) < 1e-12);
        } else {
          for (double v : dd.rvals) CHECK(circle_dist(v) < 1e-12);
        }
      }
}

TEST_CASE("is_cocycle knows coboundaries and rejects random circle data") {
  Nerve nerve = build_nerve(torus_box_cover(3, default_margin(3)));
  Rng rng = Rng::stream(7, "test", "is-cocycle", 0);
  Cochain c = random_cochain(Ring::Circle, 1, nerve, rng);
  CHECK(is_cocycle(delta(c, nerve), nerve, 1e-10));
  Cochain noise = random_cochain(Ring::Circle, 2, nerve, rng);
  CHECK_FALSE(is_cocycle(noise, nerve, 1e-10));
}

TEST_CASE("antisymmetrized evaluation flips sign and kills repeats") {
  Nerve nerve = build_nerve(circle_arc_cover(3, 0.05));
  Cochain c = Cochain::zeros(Ring::Int, 1, 3);
  c.zvals = {5, -2, 9};
  CHECK(evaluate_int(c, nerve, {0, 1}) == 5);
  CHECK(evaluate_int(c, nerve, {1, 0}) == -5);
  CHECK(evaluate_int(c, nerve, {1, 1}) == 0);
  CHECK(evaluate_real(c, nerve, {2, 1}) == doctest::Approx(-9.0));
}

TEST_CASE("solve_coboundary: constructed coboundaries come back") {
  std::vector<Nerve> nerves;
  nerves.push_back(build_nerve(circle_arc_cover(3, 0.05)));
  nerves.push_back(build_nerve(octahedron_cover()));
  for (const Nerve& nerve : nerves)
    for (int s = 0; s < 10; ++s) {
      Rng rng = Rng::stream(3, "test", "solve", s);
      Cochain q0 = random_cochain(Ring::Int, 0, nerve, rng);
      Cochain g = delta(q0, nerve);
      auto q = solve_coboundary(g, nerve);
      REQUIRE(q.has_value());
      CHECK(delta(*q, nerve).zvals == g.zvals);

      Cochain c0 = random_cochain(Ring::Circle, 0, nerve, rng);
      Cochain gc = delta(c0, nerve);
      auto qc = solve_coboundary(gc, nerve);
      REQUIRE(qc.has_value());
      Cochain back = delta(*qc, nerve);
      for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(circle_dist(back.rvals[i] - gc.rvals[i]) < 1e-10);
    }
}

TEST_CASE("solve_coboundary: the winding generator is not a coboundary") {
  Nerve nerve = build_nerve(circle_arc_cover(3, 0.05));
  Cochain z = Cochain::zeros(Ring::Int, 1, 3);
  z.zvals = {0, 0, 1};
  CHECK_FALSE(solve_coboundary(z, nerve).has_value());

  SUBCASE("the zero cocycle solves to the zero cochain") {
    Cochain zero = Cochain::zeros(Ring::Int, 1, 3);
    auto q = solve_coboundary(zero, nerve);
    REQUIRE(q.has_value());
    CHECK(q->zvals == std::vector<long long>{0, 0, 0});
  }
}

TEST_CASE("solve_coboundary agrees with the exact rational solver") {
  Nerve rp2 = build_nerve(rp2_cover());
  IntMatrix a = coboundary_matrix(rp2, 1);

  // random coboundaries: both routes solvable
  for (int s = 0; s < 20; ++s) {
    Rng rng = Rng::stream(11, "test", "rational-agreement", s);
    Cochain q0 = random_cochain(Ring::Int, 1, rp2, rng);
    Cochain g = delta(q0, rp2);
    CHECK(solve_coboundary(g, rp2).has_value());
    CHECK(oracles::rational_solve(a, g.zvals).has_value());
  }

  // the generator of H^2(RP^2) = Z/2 bounds rationally but not integrally
  SnfResult s = smith_normal_form(a);
  int torsion_row = -1;
  for (int i = 0; i < s.rank(); ++i)
    if (s.diagonal[i] == 2) torsion_row = i;
  REQUIRE(torsion_row >= 0);
  Cochain tau = Cochain::zeros(Ring::Int, 2, rp2.count(2));
  for (int i = 0; i < s.u_inv.rows; ++i) tau.zvals[i] = s.u_inv.at(i, torsion_row);
  REQUIRE(is_cocycle(tau, rp2));

  CHECK_FALSE(solve_coboundary(tau, rp2).has_value());
  CHECK(oracles::rational_solve(a, tau.zvals).has_value());

  Cochain doubled = tau;
  for (auto& v : doubled.zvals) v *= 2;
  CHECK(solve_coboundary(doubled, rp2).has_value());
}
