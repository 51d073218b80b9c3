#include "gerbelab/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "gerbelab/covers.hpp"
#include "gerbelab/cup.hpp"
#include "gerbelab/gerbe.hpp"
#include "gerbelab/homology.hpp"
#include "gerbelab/io.hpp"
#include "gerbelab/rng.hpp"
#include "gerbelab/spectral.hpp"
#include "gerbelab/torus.hpp"

namespace gerbelab::suites {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
  const RunConfig& config;
  Report& report;

  double tol(const std::string& name, double fallback) const {
    auto it = config.tolerances.find(name);
    return it == config.tolerances.end() ? fallback : it->second;
  }

  long long samples(long long fallback) const {
    return config.samples > 0 ? config.samples : fallback;
  }

  Rng stream(const std::string& check, std::uint64_t sample) const {
    return Rng::stream(config.seed, report.suite, check, sample);
  }

  void add(const std::string& name, double value, bool pass, double seconds) {
    report.checks.push_back({name, value, pass, seconds});
  }

  // run a check returning (value, pass); exceptions fail the check
  void check(const std::string& name,
             const std::function<std::pair<double, bool>()>& body) {
    auto start = Clock::now();
    double value = 0.0;
    bool pass = false;
    try {
      auto [v, p] = body();
      value = v;
      pass = p;
    } catch (const std::exception&) {
      value = std::nan("");
      pass = false;
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    add(name, value, pass, seconds);
  }

  void check_leq(const std::string& name, double bound,
                 const std::function<double()>& body) {
    check(name, [&]() -> std::pair<double, bool> {
      double v = body();
      return {v, v <= bound};
    });
  }
};

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

torus::FiberTuple random_fiber_tuple(int points, Rng& rng) {
  torus::TorusPoint base{{rng.uniform(), rng.uniform(), rng.uniform()}};
  torus::FiberTuple t;
  t.points.push_back(base);
  for (int k = 1; k < points; ++k) {
    torus::TorusPoint p = base;
    for (int c = 0; c < 3; ++c) p.x[c] += static_cast<double>(rng.uniform_int(-3, 3));
    t.points.push_back(p);
  }
  return t;
}

// ---------------------------------------------------------------- fixtures

struct Fixtures {
  Nerve circle3;
  Nerve octa;
  Nerve rp2;
  Nerve torus3;
  Nerve sphere_circle;  // octahedron x 3 arcs
  Nerve rp2_circle;

  static const Fixtures& get() {
    static Fixtures f = [] {
      Fixtures fx;
      fx.circle3 = build_nerve(circle_arc_cover(3, 0.05));
      fx.octa = build_nerve(octahedron_cover());
      fx.rp2 = build_nerve(rp2_cover());
      fx.torus3 = build_nerve(torus_box_cover(3, default_margin(3)));
      fx.sphere_circle = build_nerve(product_cover(octahedron_cover(), circle_arc_cover(3, 0.05)));
      fx.rp2_circle = build_nerve(product_cover(rp2_cover(), circle_arc_cover(3, 0.05)));
      return fx;
    }();
    return f;
  }
};

std::vector<int> projection_map(int count, int right_count, bool left) {
  std::vector<int> map(count);
  for (int i = 0; i < count; ++i) map[i] = left ? i / right_count : i % right_count;
  return map;
}

// ------------------------------------------------------------------ suites

void run_fundamental(Runner& r) {
  const Fixtures& fx = Fixtures::get();
  const std::vector<const Nerve*> nerves = {&fx.circle3, &fx.octa, &fx.rp2, &fx.torus3};
  const long long per_ring = r.samples(500);

  auto dd_residual = [&](Ring ring) {
    double worst = 0.0;
    for (const Nerve* nerve : nerves) {
      for (long long s = 0; s < per_ring; ++s) {
        Rng rng = r.stream("delta-delta", static_cast<std::uint64_t>(s) * 31 +
                                               static_cast<std::uint64_t>(ring));
        int degree = static_cast<int>(rng.uniform_int(0, nerve->max_degree() - 2));
        Cochain c = random_cochain(ring, degree, *nerve, rng);
        Cochain dd = delta(delta(c, *nerve), *nerve);
        if (ring == Ring::Int) {
          for (long long v : dd.zvals)
            worst = std::max(worst, static_cast<double>(std::llabs(v)));
        } else if (ring == Ring::Real) {
          for (double v : dd.rvals) worst = std::max(worst, std::abs(v));
        } else {
          for (double v : dd.rvals) worst = std::max(worst, circle_dist(v));
        }
      }
    }
    return worst;
  };

  r.check("delta-delta-int", [&]() -> std::pair<double, bool> {
    double v = dd_residual(Ring::Int);
    return {v, v == 0.0};
  });
  r.check_leq("delta-delta-real", r.tol("delta-delta", 1e-12),
              [&] { return dd_residual(Ring::Real); });
  r.check_leq("delta-delta-circle", r.tol("delta-delta", 1e-12),
              [&] { return dd_residual(Ring::Circle); });

  r.check("downward-closure", [&]() -> std::pair<double, bool> {
    for (const Nerve* nerve : nerves)
      for (int degree = 1; degree <= nerve->max_degree(); ++degree)
        for (const auto& simplex : nerve->simplices(degree)) {
          std::vector<int> face(simplex.size() - 1);
          for (std::size_t omit = 0; omit < simplex.size(); ++omit) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < simplex.size(); ++i)
              if (i != omit) face[k++] = simplex[i];
            if (nerve->index_of(face) < 0) return {1.0, false};
          }
        }
    return {0.0, true};
  });

  r.check("delta-example-circle", [&]() -> std::pair<double, bool> {
    Cochain v = Cochain::zeros(Ring::Int, 0, 3);
    v.zvals = {0, 1, 0};
    Cochain d = delta(v, fx.circle3);
    bool ok = d.zvals == std::vector<long long>{1, 0, -1};
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("solve-coboundary-soundness", [&]() -> std::pair<double, bool> {
    double worst = 0.0;
    const long long rounds = std::min<long long>(r.samples(500), 25);
    for (const Nerve* nerve : nerves) {
      NerveHomology hom(*nerve);
      for (long long s = 0; s < rounds; ++s) {
        Rng rng = r.stream("solve-coboundary", static_cast<std::uint64_t>(s));
        int degree = static_cast<int>(rng.uniform_int(0, 1));
        Cochain q0 = random_cochain(Ring::Int, degree, *nerve, rng);
        Cochain g = delta(q0, *nerve);
        auto q = hom.solve_coboundary(g);
        if (!q) return {1.0, false};
        Cochain back = delta(*q, *nerve);
        for (std::size_t i = 0; i < g.size(); ++i)
          worst = std::max(worst,
                           static_cast<double>(std::llabs(back.zvals[i] - g.zvals[i])));
        Cochain c0 = random_cochain(Ring::Circle, degree, *nerve, rng);
        Cochain gc = delta(c0, *nerve);
        auto qc = hom.solve_coboundary(gc);
        if (!qc) return {1.0, false};
        Cochain backc = delta(*qc, *nerve);
        for (std::size_t i = 0; i < gc.size(); ++i)
          worst = std::max(worst, circle_dist(backc.rvals[i] - gc.rvals[i]));
      }
    }
    return {worst, worst <= r.tol("solve-coboundary", 1e-10)};
  });

  r.check("generator-not-coboundary", [&]() -> std::pair<double, bool> {
    Cochain z = Cochain::zeros(Ring::Int, 1, fx.circle3.count(1));
    z.zvals = {0, 0, 1};
    auto q = solve_coboundary(z, fx.circle3);
    return {q ? 1.0 : 0.0, !q.has_value()};
  });
}

void run_cohomology(Runner& r) {
  const Fixtures& fx = Fixtures::get();

  auto group_is = [](const CohomologyGroup& g, long long rank,
                     std::vector<long long> torsion) {
    return g.free_rank == rank && g.torsion_factors == torsion;
  };

  r.check("snf-2x2", [&]() -> std::pair<double, bool> {
    IntMatrix a(2, 2);
    a.a = {2, 4, 6, 8};
    SnfResult s = smith_normal_form(a);
    bool ok = s.diagonal == std::vector<long long>{2, 4};
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("snf-zero", [&]() -> std::pair<double, bool> {
    SnfResult s = smith_normal_form(IntMatrix(3, 2));
    return {static_cast<double>(s.diagonal.size()), s.diagonal.empty()};
  });

  r.check("snf-witnesses", [&]() -> std::pair<double, bool> {
    // exact U*A*V = D and divisibility on every matrix the groups below use
    const std::vector<std::pair<const Nerve*, int>> jobs = {
        {&fx.circle3, 0}, {&fx.octa, 1},   {&fx.rp2, 1},
        {&fx.torus3, 2},  {&fx.torus3, 3}, {&fx.rp2_circle, 2}};
    for (auto [nerve, degree] : jobs) {
      IntMatrix a = coboundary_matrix(*nerve, degree);
      SnfResult s = smith_normal_form(a);
      IntMatrix uav = s.U.multiply(a).multiply(s.V);
      for (int i = 0; i < uav.rows; ++i)
        for (int j = 0; j < uav.cols; ++j)
          if (uav.at(i, j) != s.D.at(i, j)) return {1.0, false};
      for (std::size_t i = 1; i < s.diagonal.size(); ++i)
        if (s.diagonal[i] % s.diagonal[i - 1] != 0) return {1.0, false};
      IntMatrix uu = s.U.multiply(s.u_inv);
      IntMatrix vv = s.V.multiply(s.v_inv);
      for (int i = 0; i < uu.rows; ++i)
        for (int j = 0; j < uu.cols; ++j)
          if (uu.at(i, j) != (i == j ? 1 : 0)) return {1.0, false};
      for (int i = 0; i < vv.rows; ++i)
        for (int j = 0; j < vv.cols; ++j)
          if (vv.at(i, j) != (i == j ? 1 : 0)) return {1.0, false};
    }
    return {0.0, true};
  });

  r.check("circle-h0-h1", [&]() -> std::pair<double, bool> {
    bool ok = group_is(cohomology(fx.circle3, 0), 1, {}) &&
              group_is(cohomology(fx.circle3, 1), 1, {});
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("single-vertex", [&]() -> std::pair<double, bool> {
    Cover point;
    point.index_count = 1;
    point.overlaps = [](const std::vector<int>&) { return true; };
    Nerve nerve = build_nerve(point);
    bool ok = group_is(cohomology(nerve, 0), 1, {}) &&
              group_is(cohomology(nerve, 1), 0, {});
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("sphere-h2", [&]() -> std::pair<double, bool> {
    bool ok = group_is(cohomology(fx.octa, 1), 0, {}) &&
              group_is(cohomology(fx.octa, 2), 1, {});
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("rp2-torsion", [&]() -> std::pair<double, bool> {
    bool ok = group_is(cohomology(fx.rp2, 1), 0, {}) &&
              group_is(cohomology(fx.rp2, 2), 0, {2});
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("torus-h3", [&]() -> std::pair<double, bool> {
    bool ok = group_is(cohomology(fx.torus3, 0), 1, {}) &&
              group_is(cohomology(fx.torus3, 3), 1, {});
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("rp2-circle-h3", [&]() -> std::pair<double, bool> {
    bool ok = group_is(cohomology(fx.rp2_circle, 3), 0, {2});
    return {ok ? 0.0 : 1.0, ok};
  });
}

void run_torus(Runner& r) {
  using namespace torus;
  const double tight = r.tol("residual", 1e-10);

  r.check_leq("delta-gamma-integer", r.tol("integrality", 1e-9), [&] {
    double worst = 0.0;
    const long long count = r.samples(10000);
    for (long long s = 0; s < count; ++s) {
      Rng rng = r.stream("delta-gamma", static_cast<std::uint64_t>(s));
      FiberTuple t = random_fiber_tuple(4, rng);
      double v = delta_gamma(t);
      worst = std::max(worst, std::abs(v - std::round(v)));
    }
    return worst;
  });

  r.check_leq("delta-gamma-closed-form", 1e-10, [&] {
    double worst = 0.0;
    const long long count = r.samples(10000);
    for (long long s = 0; s < count; ++s) {
      Rng rng = r.stream("closed-form", static_cast<std::uint64_t>(s));
      FiberTuple t = random_fiber_tuple(4, rng);
      double alternating = 0.0;
      for (int omit = 0; omit < 4; ++omit) {
        FiberTuple face;
        for (int i = 0; i < 4; ++i)
          if (i != omit) face.points.push_back(t.points[i]);
        alternating += (omit % 2 == 0 ? 1.0 : -1.0) * gamma(face);
      }
      worst = std::max(worst, std::abs(alternating - gamma_closed_form(t)));
    }
    return worst;
  });

  r.check_leq("connection-residual", tight, [&] {
    double worst = 0.0;
    const long long count = std::min<long long>(r.samples(1000), 20000);
    for (long long s = 0; s < count; ++s) {
      Rng rng = r.stream("connection", static_cast<std::uint64_t>(s));
      worst = std::max(worst, check_connection(random_fiber_tuple(3, rng)));
    }
    return worst;
  });

  r.check_leq("curving-residual", tight, [&] {
    double worst = 0.0;
    const long long count = std::min<long long>(r.samples(1000), 20000);
    for (long long s = 0; s < count; ++s) {
      Rng rng = r.stream("curving", static_cast<std::uint64_t>(s));
      worst = std::max(worst, check_curving(random_fiber_tuple(2, rng)));
    }
    return worst;
  });

  r.check_leq("df-equals-omega", r.tol("df", 1e-12), [&] {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      Rng rng = r.stream("df", static_cast<std::uint64_t>(s));
      TorusPoint p{{rng.uniform(), rng.uniform(), rng.uniform()}};
      worst = std::max(worst, check_df(p));
    }
    return worst;
  });

  r.check("curvature-integral", [&]() -> std::pair<double, bool> {
    for (int grid : {1, 2, 5, 16}) {
      if (integrate_three_curvature(grid) != 1.0) return {1.0, false};
    }
    double doubled = integrate_three_curvature(8, 2.0);
    return {std::abs(doubled - 2.0), doubled == 2.0};
  });

  const int resolution = std::max(3, r.config.resolution);
  CechGerbe gerbe = cech_cocycle(resolution);
  NerveHomology hom(gerbe.nerve);
  DDClass cls = dd(gerbe, hom);

  r.check("dd-order-infinite", [&]() -> std::pair<double, bool> {
    return {cls.info.finite() ? 1.0 : 0.0, !cls.info.finite()};
  });

  r.check("dd-pairing-unit", [&]() -> std::pair<double, bool> {
    if (cls.free_pairings.size() != 1) return {0.0, false};
    double p = static_cast<double>(cls.free_pairings[0]);
    return {p, std::abs(p) == 1.0};
  });

  r.check_leq("winding-bridge", r.tol("integrality", 1e-9), [&] {
    ArcProduct cover = box_cover(resolution);
    double worst = 0.0;
    const auto& tets = gerbe.nerve.simplices(3);
    const std::size_t step = std::max<std::size_t>(1, tets.size() / 200);
    for (std::size_t s = 0; s < tets.size(); s += step) {
      TorusPoint base = overlap_midpoint(cover, tets[s]);
      FiberTuple t;
      for (int v : tets[s]) t.points.push_back(section(cover, v, base));
      double value = delta_gamma(t);
      worst = std::max(worst,
                       std::abs(value - static_cast<double>(gerbe.winding.zvals[s])));
    }
    return worst;
  });

  r.check("refinement-invariance", [&]() -> std::pair<double, bool> {
    const int fine_res = resolution + 1;
    const double fine_margin = 1.0 / (12.0 * fine_res);
    const double coarse_margin =
        1.0 / resolution - 1.0 / fine_res + 2.5 * fine_margin;
    CechGerbe coarse = cech_cocycle(resolution, coarse_margin);
    CechGerbe fine = cech_cocycle(fine_res, fine_margin);
    std::vector<int> map =
        arc_refinement_map(fine_res, fine_margin, resolution, coarse_margin, 3);
    CechGerbe pulled = refine(coarse, fine.nerve, map);

    NerveHomology fine_hom(fine.nerve);
    DDClass fine_cls = dd(fine, fine_hom);
    if (fine_cls.free_pairings.size() != 1 ||
        std::llabs(fine_cls.free_pairings[0]) != 1)
      return {0.0, false};
    Cochain diff = pulled.winding;
    for (std::size_t i = 0; i < diff.zvals.size(); ++i)
      diff.zvals[i] -= fine.winding.zvals[i];
    ClassInfo di = fine_hom.class_info(diff);
    bool same = di.finite() && *di.order == 1;
    // the coarse pairing must also match at the coarse level
    DDClass coarse_cls = dd(coarse);
    bool coarse_ok = coarse_cls.free_pairings == cls.free_pairings;
    return {same && coarse_ok ? 0.0 : 1.0, same && coarse_ok};
  });

  r.check("tensor-dual-trivial", [&]() -> std::pair<double, bool> {
    CechGerbe paired = tensor_reduced(gerbe, dual(gerbe));
    DDClass c = dd(paired, hom);
    bool order_one = c.info.finite() && *c.info.order == 1;
    auto q = is_trivial(paired);
    bool sound = true;
    if (q) {
      Cochain back = delta(*q, paired.nerve);
      for (std::size_t i = 0; i < back.size(); ++i)
        if (circle_dist(back.rvals[i] - paired.g.rvals[i]) > 1e-10) sound = false;
    }
    bool ok = order_one && q.has_value() && sound;
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("power-scaling", [&]() -> std::pair<double, bool> {
    CechGerbe square = tensor_reduced(gerbe, gerbe);
    CechGerbe cube = tensor_reduced(square, gerbe);
    ClassCoordinates c1 = hom.class_coordinates(gerbe.winding);
    ClassCoordinates c2 = hom.class_coordinates(square.winding);
    ClassCoordinates c3 = hom.class_coordinates(cube.winding);
    bool ok = c2.free_coords[0] == 2 * c1.free_coords[0] &&
              c3.free_coords[0] == 3 * c1.free_coords[0];
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("bockstein-relift", [&]() -> std::pair<double, bool> {
    // re-lifting the local data by integers moves the winding cocycle by a
    // coboundary only
    const long long rounds = std::min<long long>(r.samples(100), 100);
    for (long long s = 0; s < rounds; ++s) {
      Rng rng = r.stream("relift", static_cast<std::uint64_t>(s));
      Cochain shift = Cochain::zeros(Ring::Int, 2, gerbe.nerve.count(2));
      for (auto& v : shift.zvals) v = rng.uniform_int(-4, 4);
      Cochain moved = gerbe.winding;
      Cochain dshift = delta(shift, gerbe.nerve);
      for (std::size_t i = 0; i < moved.zvals.size(); ++i)
        moved.zvals[i] += dshift.zvals[i];
      Cochain diff = moved;
      for (std::size_t i = 0; i < diff.zvals.size(); ++i)
        diff.zvals[i] -= gerbe.winding.zvals[i];
      ClassInfo info = hom.class_info(diff);
      if (!info.is_coboundary) return {1.0, false};
    }
    return {0.0, true};
  });
}

void run_spectral(Runner& r) {
  using namespace spectral;
  const double loose = r.tol("residual", 1e-8);
  const long long trials = r.samples(100);
  std::vector<int> sizes = r.config.n > 0 ? std::vector<int>{r.config.n}
                                          : std::vector<int>{2, 3, 4};

  r.check_leq("reconstruction", loose, [&] {
    double worst = 0.0;
    for (int n : sizes)
      for (long long t = 0; t < trials; ++t) {
        Rng rng = r.stream("reconstruction-" + std::to_string(n),
                           static_cast<std::uint64_t>(t));
        UnitaryPoint u = random_su(n, rng);
        auto blocks = eigendecompose(u);
        CMat rebuilt(n, n);
        CMat projector_sum(n, n);
        for (const EigenBlock& b : blocks) {
          CMat p = b.basis.multiply(b.basis.adjoint());
          cplx phase = std::exp(cplx(0.0, 2.0 * M_PI * b.angle));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              rebuilt.at(i, j) += phase * p.at(i, j);
              projector_sum.at(i, j) += p.at(i, j);
            }
        }
        for (int i = 0; i < n; ++i) projector_sum.at(i, i) -= 1.0;
        double res = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            res = std::max(res, std::abs(rebuilt.at(i, j) - u.x.at(i, j)));
        worst = std::max({worst, res, projector_sum.frobenius()});
      }
    return worst;
  });

  r.check_leq("associativity", loose, [&] {
    double worst = 0.0;
    for (int n : sizes)
      for (long long t = 0; t < trials; ++t) {
        Rng rng = r.stream("associativity-" + std::to_string(n),
                           static_cast<std::uint64_t>(t));
        UnitaryPoint u = random_su(n, rng);
        std::vector<Cut> cuts = random_cuts(u, 4, rng);
        worst = std::max(worst, check_cocycle(u, cuts));
      }
    return worst;
  });

  r.check_leq("duality", loose, [&] {
    double worst = 0.0;
    for (int n : sizes)
      for (long long t = 0; t < trials; ++t) {
        Rng rng = r.stream("duality-" + std::to_string(n),
                           static_cast<std::uint64_t>(t));
        UnitaryPoint u = random_su(n, rng);
        std::vector<Cut> cuts = random_cuts(u, 2, rng);
        DetLine fwd = spectral_line(u, cuts[0], cuts[1]);
        DetLine rev = spectral_line(u, cuts[1], cuts[0]);
        if (!rev.dual_flag && cuts[0].t != cuts[1].t) return 1.0;
        cplx pairing = 0.0;
        for (std::size_t i = 0; i < fwd.wedge.size(); ++i)
          pairing += std::conj(rev.wedge[i]) * fwd.wedge[i];
        worst = std::max(worst, std::abs(std::abs(pairing) - 1.0));
      }
    return worst;
  });

  r.check_leq("diagonal-exact", r.tol("diagonal", 1e-12), [&] {
    double worst = 0.0;
    for (int n : sizes)
      for (long long t = 0; t < std::min<long long>(trials, 50); ++t) {
        Rng rng = r.stream("diagonal-" + std::to_string(n),
                           static_cast<std::uint64_t>(t));
        CMat m(n, n);
        double angle_sum = 0.0;
        for (int i = 0; i < n - 1; ++i) {
          double a = rng.uniform(0.05, 0.95);
          angle_sum += a;
          m.at(i, i) = std::exp(cplx(0.0, 2.0 * M_PI * a));
        }
        m.at(n - 1, n - 1) = std::exp(cplx(0.0, -2.0 * M_PI * angle_sum));
        UnitaryPoint u(std::move(m));
        std::vector<Cut> cuts = random_cuts(u, 4, rng);
        worst = std::max(worst, check_cocycle(u, cuts));
      }
    return worst;
  });

  r.check_leq("continuity-factor", r.tol("continuity", 1e3), [&] {
    double worst = 0.0;
    for (long long t = 0; t < std::min<long long>(trials, 20); ++t) {
      Rng rng = r.stream("continuity", static_cast<std::uint64_t>(t));
      UnitaryPoint u = random_su(3, rng);
      std::vector<Cut> cuts = random_cuts(u, 3, rng, 1e-4);
      DetLine l1 = spectral_line(u, cuts[0], cuts[1]);
      DetLine l2 = spectral_line(u, cuts[1], cuts[2]);
      cplx base = multiply(u, l1, l2).scalar;

      CMat perturbed = u.x;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          perturbed.at(i, j) += 1e-7 * cplx(rng.gaussian(), rng.gaussian());
      // re-unitarize
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < j; ++k) {
          cplx proj = 0.0;
          for (int i = 0; i < 3; ++i)
            proj += std::conj(perturbed.at(i, k)) * perturbed.at(i, j);
          for (int i = 0; i < 3; ++i) perturbed.at(i, j) -= proj * perturbed.at(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < 3; ++i) norm += std::norm(perturbed.at(i, j));
        norm = std::sqrt(norm);
        for (int i = 0; i < 3; ++i) perturbed.at(i, j) /= norm;
      }
      cplx det = determinant(perturbed);
      for (int i = 0; i < 3; ++i) perturbed.at(i, 2) *= std::conj(det) / std::abs(det);

      double moved = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          moved = std::max(moved, std::abs(perturbed.at(i, j) - u.x.at(i, j)));
      if (moved == 0.0) continue;
      UnitaryPoint v(std::move(perturbed), 1e-8);
      DetLine m1 = spectral_line(v, cuts[0], cuts[1]);
      DetLine m2 = spectral_line(v, cuts[1], cuts[2]);
      cplx shifted = multiply(v, m1, m2).scalar;
      worst = std::max(worst, std::abs(shifted - base) / moved);
    }
    return worst;
  });
}

void run_cup(Runner& r) {
  using namespace cup;
  const Fixtures& fx = Fixtures::get();
  const Nerve& product = fx.sphere_circle;
  NerveHomology hom(product);

  Cochain hopf = hopf_cocycle(fx.octa);
  Cochain wind = winding_cocycle(fx.circle3, 3);
  std::vector<int> left = projection_map(product.vertex_count(), 3, true);
  std::vector<int> right = projection_map(product.vertex_count(), 3, false);
  Cochain a = pull_back(hopf, product, fx.octa, left);
  Cochain b = pull_back(wind, product, fx.circle3, right);

  r.check("hopf-pairing", [&]() -> std::pair<double, bool> {
    ClassCoordinates c = class_coordinates(hopf, fx.octa);
    bool ok = c.free_coords.size() == 1 && c.free_coords[0] == 1;
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("winding-pairing", [&]() -> std::pair<double, bool> {
    ClassCoordinates c = class_coordinates(wind, fx.circle3);
    bool ok = c.free_coords.size() == 1 && std::llabs(c.free_coords[0]) == 1;
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("cup-is-cocycle", [&]() -> std::pair<double, bool> {
    Cochain c = cup_product(a, b, product);
    double v = cocycle_violation(c, product);
    return {v, v == 0.0};
  });

  CechGerbe gerbe = cup_gerbe(a, b, product);
  DDClass cls = dd(gerbe, hom);

  r.check("sphere-circle-pairing", [&]() -> std::pair<double, bool> {
    bool ok = !cls.info.finite() && cls.free_pairings.size() == 1 &&
              std::llabs(cls.free_pairings[0]) == 1;
    return {ok ? static_cast<double>(cls.free_pairings[0]) : 0.0, ok};
  });

  r.check("bilinearity-doubling", [&]() -> std::pair<double, bool> {
    Cochain doubled = b;
    for (auto& v : doubled.zvals) v *= 2;
    CechGerbe twice = cup_gerbe(a, doubled, product);
    ClassCoordinates c2 = hom.class_coordinates(twice.winding);
    bool ok = c2.free_coords.size() == 1 &&
              c2.free_coords[0] == 2 * cls.free_pairings[0];
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("coboundary-cup-trivial", [&]() -> std::pair<double, bool> {
    Rng rng = r.stream("coboundary-cup", 0);
    Cochain u1 = random_cochain(Ring::Int, 1, product, rng);
    Cochain a0 = delta(u1, product);
    CechGerbe g0 = cup_gerbe(a0, b, product);
    ClassInfo info = hom.class_info(g0.winding);
    bool ok = info.finite() && *info.order == 1;
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("class-independence", [&]() -> std::pair<double, bool> {
    Rng rng = r.stream("class-independence", 0);
    Cochain u1 = random_cochain(Ring::Int, 1, product, rng);
    Cochain moved = a;
    Cochain du = delta(u1, product);
    for (std::size_t i = 0; i < moved.zvals.size(); ++i)
      moved.zvals[i] += du.zvals[i];
    Cochain c1 = cup_product(a, b, product);
    Cochain c2 = cup_product(moved, b, product);
    for (std::size_t i = 0; i < c1.size(); ++i)
      c2.zvals[i] -= c1.zvals[i];
    ClassInfo info = hom.class_info(c2);
    bool ok = info.finite() && *info.order == 1;
    return {ok ? 0.0 : 1.0, ok};
  });
}

void run_lifting(Runner& r) {
  using namespace cup;
  const Fixtures& fx = Fixtures::get();
  const Nerve& product = fx.sphere_circle;

  r.check("ext-associativity", [&]() -> std::pair<double, bool> {
    double worst = 0.0;
    const long long rounds = r.samples(500);
    for (long long s = 0; s < rounds; ++s) {
      Rng rng = r.stream("ext-associativity", static_cast<std::uint64_t>(s));
      ExtElement p{rng.uniform(), rng.uniform_int(-5, 5), rng.uniform()};
      ExtElement q{rng.uniform(), rng.uniform_int(-5, 5), rng.uniform()};
      ExtElement k{rng.uniform(), rng.uniform_int(-5, 5), rng.uniform()};
      ExtElement left = ext_multiply(ext_multiply(p, q), k);
      ExtElement right = ext_multiply(p, ext_multiply(q, k));
      if (left.n != right.n) return {1.0, false};
      worst = std::max({worst, circle_dist(left.z - right.z),
                        circle_dist(left.w - right.w)});
    }
    return {worst, worst <= r.tol("ext", 1e-12)};
  });

  r.check("ext-example", [&]() -> std::pair<double, bool> {
    ExtElement p{0.3, 1, 0.0}, q{0.2, 2, 0.0};
    ExtElement pq = ext_multiply(p, q);
    bool ok = std::abs(pq.z - 0.5) < 1e-15 && pq.n == 3 && std::abs(pq.w - 0.6) < 1e-15;
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("printed-exponent-fails", [&]() -> std::pair<double, bool> {
    ExtElement p{0.3, 1, 0.0}, q{0.2, 2, 0.0}, k{0.1, 1, 0.0};
    ExtElement left = ext_multiply_printed(ext_multiply_printed(p, q), k);
    ExtElement right = ext_multiply_printed(p, ext_multiply_printed(q, k));
    double gap = circle_dist(left.w - right.w);
    ExtElement cl = ext_multiply(ext_multiply(p, q), k);
    ExtElement cr = ext_multiply(p, ext_multiply(q, k));
    double fixed = circle_dist(cl.w - cr.w);
    return {gap, gap > 0.05 && fixed < 1e-12};
  });

  r.check("extension-cocycle-identity", [&]() -> std::pair<double, bool> {
    double worst = 0.0;
    const long long rounds = r.samples(500);
    for (long long s = 0; s < rounds; ++s) {
      Rng rng = r.stream("extension-cocycle", static_cast<std::uint64_t>(s));
      ExtElement g{rng.uniform(), rng.uniform_int(-5, 5), 0.0};
      ExtElement h{rng.uniform(), rng.uniform_int(-5, 5), 0.0};
      ExtElement k{rng.uniform(), rng.uniform_int(-5, 5), 0.0};
      ExtElement gh{frac(g.z + h.z), g.n + h.n, 0.0};
      ExtElement hk{frac(h.z + k.z), h.n + k.n, 0.0};
      double lhs = u1xz_cocycle(g, h) + u1xz_cocycle(gh, k);
      double rhs = u1xz_cocycle(h, k) + u1xz_cocycle(g, hk);
      worst = std::max(worst, circle_dist(lhs - rhs));
    }
    return {worst, worst <= r.tol("ext", 1e-12)};
  });

  r.check("lifting-matches-cup", [&]() -> std::pair<double, bool> {
    Cochain hopf = hopf_cocycle(fx.octa);
    Cochain wind = winding_cocycle(fx.circle3, 3);
    std::vector<int> left = projection_map(product.vertex_count(), 3, true);
    std::vector<int> right = projection_map(product.vertex_count(), 3, false);
    Cochain a = pull_back(hopf, product, fx.octa, left);
    Cochain b = pull_back(wind, product, fx.circle3, right);

    TransitionData t = TransitionData::winding(product, b, a);
    CechGerbe lifted = lifting_gerbe_u1xz(product, t);
    CechGerbe cupped = cup_gerbe(a, b, product);

    NerveHomology hom(product);
    ClassCoordinates c1 = hom.class_coordinates(lifted.winding);
    ClassCoordinates c2 = hom.class_coordinates(cupped.winding);
    bool ok = c1.free_coords == c2.free_coords &&
              c1.torsion_coords == c2.torsion_coords &&
              std::llabs(c1.free_coords.at(0)) == 1;
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("zero-winding-trivial", [&]() -> std::pair<double, bool> {
    Cochain zero_n = Cochain::zeros(Ring::Int, 1, product.count(1));
    Cochain flat_z = Cochain::zeros(Ring::Circle, 1, product.count(1));
    TransitionData t = TransitionData::flat(product, zero_n, flat_z);
    CechGerbe g = lifting_gerbe_u1xz(product, t);
    ClassInfo info = class_info(g.winding, product);
    bool ok = info.finite() && *info.order == 1;
    return {ok ? 0.0 : 1.0, ok};
  });

  r.check("trivial-extension", [&]() -> std::pair<double, bool> {
    Rng rng = r.stream("trivial-extension", 0);
    Cochain c0 = random_cochain(Ring::Circle, 0, product, rng);
    Cochain flat_z = delta(c0, product);
    Cochain n0 = random_cochain(Ring::Int, 0, product, rng);
    Cochain n = delta(n0, product);
    TransitionData t = TransitionData::flat(product, n, flat_z);
    CechGerbe g = lifting_gerbe(product, t, [](ExtElement, ExtElement) { return 0.0; });
    ClassInfo info = class_info(g.winding, product);
    bool ok = info.finite() && *info.order == 1;
    double v = cocycle_violation(g.g, product);
    return {v, ok && v <= 1e-12};
  });
}

void run_into(Runner& r, const std::string& suite);

void run_all(Runner& r) {
  for (const char* name :
       {"fundamental-complex", "cohomology", "torus", "spectral", "cup", "lifting"})
    run_into(r, name);
}

void run_into(Runner& r, const std::string& suite) {
  if (suite == "fundamental-complex")
    run_fundamental(r);
  else if (suite == "cohomology")
    run_cohomology(r);
  else if (suite == "torus")
    run_torus(r);
  else if (suite == "spectral")
    run_spectral(r);
  else if (suite == "cup")
    run_cup(r);
  else if (suite == "lifting")
    run_lifting(r);
  else if (suite == "all")
    run_all(r);
  else
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace

std::vector<SuiteInfo> list_suites() {
  return {
      {"fundamental-complex", "coboundary operator: delta-delta = 0, closure, solving"},
      {"cohomology", "Smith normal form and cohomology of the standard nerves"},
      {"torus", "the T^3 gerbe: integrality, connective structure, DD class"},
      {"spectral", "the SU(n) spectral gerbe: eigenlines, products, duality"},
      {"cup", "cup-product gerbes on S^2 x S^1"},
      {"lifting", "central extension of U(1) x Z and the lifting gerbe"},
      {"all", "every suite above, in order"},
  };
}

Report run(const RunConfig& config) {
  bool known = false;
  for (const SuiteInfo& info : list_suites())
    if (info.name == config.suite) known = true;
  if (!known) throw std::invalid_argument("unknown suite: " + config.suite);

  Report report;
  report.suite = config.suite;
  report.config = config;
  Runner runner{config, report};
  run_into(runner, config.suite);
  report.verdict = true;
  for (const CheckRecord& c : report.checks) report.verdict = report.verdict && c.pass;
  if (!config.json_path.empty()) io::write_file(config.json_path, report.to_json());
  return report;
}

std::string Report::to_json(bool with_times) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["config"] = {{"seed", config.seed},
                 {"samples", config.samples},
                 {"resolution", config.resolution},
                 {"n", config.n},
                 {"tolerances", config.tolerances}};
  nlohmann::json checks_json = nlohmann::json::array();
  for (const CheckRecord& c : checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["pass"] = c.pass;
    if (with_times) cj["seconds"] = c.seconds;
    checks_json.push_back(cj);
  }
  j["checks"] = checks_json;
  j["verdict"] = verdict ? "pass" : "fail";
  return j.dump(2);
}

std::string Report::table() const {
  std::ostringstream out;
  for (const CheckRecord& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
        << "  (" << c.seconds << "s)\n";
  }
  out << (verdict ? "verdict: pass" : "verdict: fail") << "\n";
  return out.str();
}

}  // namespace gerbelab::suites
