#include "doctest.h"

#include "asymcone/errors.hpp"
#include "fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace asymcone;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 random_chart_point(const ParametricSurface& s, std::mt19937_64& rng, double margin = 0.05) {
  const ChartDomain& d = s.domain();
  std::uniform_real_distribution<double> fu(d.u0 + margin * (d.u1 - d.u0), d.u1 - margin * (d.u1 - d.u0));
  std::uniform_real_distribution<double> fv(d.v0 + margin * (d.v1 - d.v0), d.v1 - margin * (d.v1 - d.v0));
  return {fu(rng), fv(rng)};
}

std::vector<ParametricSurface> all_surfaces() {
  return {make_plane(), make_cylinder(1.5, 2.0), make_catenoid(), make_enneper(), make_sphere(2.0),
          make_bspline_graph(bspline_net())};
}

} // namespace

TEST_CASE("principal curvatures of simple surfaces") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const SecondFundamentalForm c = second_form(make_cylinder(1.0, 1.0), random_chart_point(make_cylinder(), rng));
    CHECK(c.principal[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(c.principal[1]) < 1e-12);
    const SecondFundamentalForm s = second_form(make_sphere(2.0), random_chart_point(make_sphere(2.0), rng));
    CHECK(s.principal[0] == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(s.principal[1] == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(s.gauss == doctest::Approx(0.25).epsilon(1e-12));
  }
  CHECK_THROWS_AS(second_form(make_catenoid(), Vec2(1.0, 3.0)), DomainError);
}

TEST_CASE("minimal surfaces have zero mean curvature") {
  std::mt19937_64 rng(2);
  for (const ParametricSurface& s : {make_catenoid(), make_enneper()}) {
    for (int i = 0; i < 1000; ++i) {
      const SecondFundamentalForm h = second_form(s, random_chart_point(s, rng));
      CHECK(std::abs(h.mean) <= 1e-10 * std::max(1.0, std::abs(h.principal[0])));
      CHECK(h.gauss < 0.0);
    }
  }
}

TEST_CASE("second form matches finite differences of the normal") {
  std::mt19937_64 rng(3);
  const double h = 1e-5;
  for (const ParametricSurface& s : all_surfaces()) {
    for (int i = 0; i < 50; ++i) {
      const Vec2 uv = random_chart_point(s, rng, 0.1);
      const SecondFundamentalForm k = second_form(s, uv);
      const Vec3 nu = (s.normal(uv.x() + h, uv.y()) - s.normal(uv.x() - h, uv.y())) / (2 * h);
      const Vec3 nv = (s.normal(uv.x(), uv.y() + h) - s.normal(uv.x(), uv.y() - h)) / (2 * h);
      const double scale = std::max({std::abs(k.e), std::abs(k.f), std::abs(k.g), 1e-3});
      CHECK(std::abs(k.e - k.pu.dot(nu)) <= 1e-6 * scale);
      CHECK(std::abs(k.f - k.pu.dot(nv)) <= 1e-6 * scale);
      CHECK(std::abs(k.g - k.pv.dot(nv)) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("shape operator eigenvalues") {
  std::mt19937_64 rng(4);
  for (const ParametricSurface& s : all_surfaces()) {
    const Vec2 uv = random_chart_point(s, rng, 0.1);
    const SecondFundamentalForm k = second_form(s, uv);
    Eigen::Matrix2d I, II;
    I << k.E, k.F, k.F, k.G;
    II << k.e, k.f, k.f, k.g;
    const Eigen::Matrix2d S = I.inverse() * II;
    CHECK(k.gauss == doctest::Approx(II.determinant() / I.determinant()).epsilon(1e-10).scale(1.0));
    CHECK(k.principal[0] + k.principal[1] == doctest::Approx(S.trace()).epsilon(1e-10).scale(1.0));
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(k.principal_dirs[static_cast<std::size_t>(j)].dot(k.normal)) < 1e-12);
  }
}

TEST_CASE("asymptotic directions") {
  std::mt19937_64 rng(5);
  const ParametricSurface cat = make_catenoid();
  for (int i = 0; i < 200; ++i) {
    const Vec2 uv = random_chart_point(cat, rng);
    const DirectionPair p = asymptotic_directions(cat, uv);
    REQUIRE(p.kind == PairKind::Two);
    CHECK(std::abs(p.dirs[0].dot(p.dirs[1])) < 1e-10);
    const QuadraticForm3 h = second_form(cat, uv).ambient();
    for (const Vec3& d : p.dirs) CHECK(std::abs(h(d)) < 1e-10);
  }
  for (const ParametricSurface& s : all_surfaces()) {
    for (int i = 0; i < 100; ++i) {
      const Vec2 uv = random_chart_point(s, rng);
      const DirectionPair p = asymptotic_directions(s, uv);
      const QuadraticForm3 h = second_form(s, uv).ambient();
      for (int k = 0; k < p.count(); ++k) CHECK(std::abs(h(p.dirs[static_cast<std::size_t>(k)])) < 1e-10);
    }
  }
  CHECK(asymptotic_directions(make_sphere(), Vec2(1.0, 0.3)).kind == PairKind::Empty);
  CHECK(asymptotic_directions(make_plane(), Vec2(0.1, 0.3)).kind == PairKind::WholePlane);
  const DirectionPair ruling = asymptotic_directions(make_cylinder(), Vec2(1.0, 0.5));
  REQUIRE(ruling.kind == PairKind::One);
  CHECK(line_angle(ruling.dirs[0], Vec3::UnitZ()) < 1e-12);
}

TEST_CASE("B-spline basis and net") {
  for (double t : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    const BasisJet b = cubic_basis(t);
    double s0 = 0, s1 = 0, s2 = 0;
    for (int i = 0; i < 5; ++i) {
      s0 += b.n[static_cast<std::size_t>(i)];
      s1 += b.d1[static_cast<std::size_t>(i)];
      s2 += b.d2[static_cast<std::size_t>(i)];
      CHECK(b.n[static_cast<std::size_t>(i)] >= 0.0);
    }
    CHECK(s0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(s1) < 1e-12);
    CHECK(std::abs(s2) < 1e-10);
  }
  const BSplineNet a = bspline_net(), b = bspline_net();
  CHECK(a.heights == b.heights);
  for (const auto& row : a.heights)
    for (double h : row) CHECK(std::abs(h) <= kDefaultBSplineAmplitude);
  CHECK_THROWS_AS(cubic_basis(1.5), DomainError);
}

TEST_CASE("smooth_form basics") {
  const ParametricSurface cyl = make_cylinder(1.0, 1.0);
  CHECK(smooth_form(cyl, {{10, 0, 0}, 1.0}).is_zero());
  const QuadraticForm3 q = smooth_form(cyl, {{0, 0, 0.5}, 2.0}, 1e-8);
  CHECK(q(Vec3::UnitX()) == doctest::Approx(kPi).epsilon(1e-8));
  CHECK(std::abs(q(Vec3::UnitZ())) < 1e-10);
}

TEST_CASE("smooth measure against an exact spherical cap") {
  // On a sphere of radius R, h = I / R, so the form integrates the tangential
  // projector; its trace is 2 area / R and the area of the cap is 2 pi R t.
  const double R = 1.0, r = 0.3;
  const Vec3 m = make_sphere(R).position(0.4, 0.2);
  const SmoothMeasure sm = smooth_measure(make_sphere(R), {m, r}, {.tol = 1e-7});
  const double cap = 2 * kPi * R * (r * r / (2 * R));
  CHECK(sm.area == doctest::Approx(cap).epsilon(1e-5));
  CHECK(sm.form.matrix().trace() == doctest::Approx(2 * cap / R).epsilon(1e-5));
}

TEST_CASE("smooth_form is rigid invariant") {
  const ParametricSurface cat = make_catenoid();
  const BorelBall b1{cat.position(0.0, 0.0), 0.3}, b2{cat.position(kPi, 0.0), 0.3};
  const QuadraticForm3 q1 = smooth_form(cat, b1, 1e-7), q2 = smooth_form(cat, b2, 1e-7);
  // rotation by pi about z maps b1 onto b2
  const Mat3 rz = Eigen::AngleAxisd(kPi, Vec3::UnitZ()).toRotationMatrix();
  const QuadraticForm3 moved = QuadraticForm3::from_matrix(rz * q1.matrix() * rz.transpose());
  CHECK(fixtures::rel_diff(moved, q2) < 1e-5);
}

TEST_CASE("QuadratureError when the budget is too small") {
  QuadratureOptions o;
  o.tol = 1e-12;
  o.cell_budget = 1000;
  CHECK_THROWS_AS(smooth_measure(make_catenoid(), {{1, 0, 0}, 0.3}, o), QuadratureError);
}

TEST_CASE("inscribed meshes lie on the surface") {
  for (const ParametricSurface& s : all_surfaces()) {
    for (GridPattern p : {GridPattern::Diagonal, GridPattern::Crisscross}) {
      const TriangleMesh m = inscribe_mesh(s, 12, 8, p);
      REQUIRE(m.has_chart_tags());
      for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        const Vec2 uv = m.chart_tags()[v];
        CHECK((m.vertices()[v] - s.position(uv.x(), uv.y())).norm() <= 1e-12);
      }
    }
  }
}

TEST_CASE("inscribed prism dihedral angles") {
  const int n = 20;
  const TriangleMesh prism = inscribe_mesh(make_cylinder(1.0, 1.0), n, 2, GridPattern::Diagonal);
  for (const EdgeRecord& e : build_edges(prism).interior) {
    if (std::abs(e.dir.z()) > 1 - 1e-12) CHECK(e.angle == doctest::Approx(2 * kPi / n).epsilon(1e-12));
    else CHECK(e.angle == 0.0);
  }
}

TEST_CASE("inscribed sphere is convex") {
  // quads of a latitude-longitude grid are planar, so their diagonals are flat
  const TriangleMesh m = inscribe_mesh(make_sphere(1.0), 16, 8, GridPattern::Diagonal);
  CHECK(m.is_closed());
  CHECK(m.signed_volume() > 0.0);
  for (const EdgeRecord& e : build_edges(m).interior) {
    const Vec2 a = m.chart_tags()[static_cast<std::size_t>(e.vertices[0])];
    const Vec2 b = m.chart_tags()[static_cast<std::size_t>(e.vertices[1])];
    const bool diagonal = a.x() != b.x() && a.y() != b.y() && std::abs(std::abs(a.y()) - kPi / 2) > 1e-12 &&
                          std::abs(std::abs(b.y()) - kPi / 2) > 1e-12;
    if (diagonal) CHECK(std::abs(e.angle) < 1e-12);
    else CHECK(e.angle > 0.0);
  }
  const TriangleMesh ico = make_icosphere(1.0, 2);
  CHECK(ico.num_faces() == 320);
  for (const EdgeRecord& e : build_edges(ico).interior) CHECK(e.angle > 0.0);
}

TEST_CASE("refinement halves the circumradius") {
  for (const ParametricSurface& s : {make_catenoid(), make_enneper(), make_bspline_graph(bspline_net())}) {
    const double a = fatness(inscribe_mesh(s, 16, 16)).max_circumradius;
    const double b = fatness(inscribe_mesh(s, 32, 32)).max_circumradius;
    CHECK(b / a == doctest::Approx(0.5).epsilon(0.1));
  }
}

TEST_CASE("lantern construction") {
  const TriangleMesh l = make_lantern(1.0, 1.0, 2, 3);
  CHECK(l.num_vertices() == 9);
  const TriangleMesh big = make_lantern(2.0, 3.0, 7, 11);
  CHECK(big.num_vertices() == 11 * 8);
  for (std::size_t v = 0; v < big.num_vertices(); ++v) {
    const Vec3& p = big.vertices()[v];
    CHECK(std::hypot(p.x(), p.y()) == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("lantern angular deviation") {
  const ParametricSurface cyl = make_cylinder(1.0, 1.0);
  // slices = sectors^2: deviation stays bounded away from zero
  for (int n : {6, 12, 24}) CHECK(angular_deviation(make_lantern(1.0, 1.0, n * n, n), cyl).max_deg > 30.0);
  // slices = sectors: deviation shrinks and fatness stays bounded
  double prev = 180.0;
  for (int n : {6, 12, 24, 48}) {
    const TriangleMesh m = make_lantern(1.0, 1.0, n, n);
    const double d = angular_deviation(m, cyl).max_deg;
    CHECK(d < 0.6 * prev);
    prev = d;
    CHECK(fatness(m).fatness > 0.01);
  }
}

TEST_CASE("angular deviation") {
  const DeviationStats flat = angular_deviation(make_flat_grid(1.0, 5), make_plane(1.0));
  CHECK(flat.max_deg == 0.0);
  CHECK(flat.offset < 1e-15);
  const TriangleMesh untagged = fixtures::unit_cube();
  CHECK_THROWS_AS(angular_deviation(untagged, make_plane()), TagError);
  const DeviationStats sphere = angular_deviation(inscribe_mesh(make_sphere(1.0), 32, 16), make_sphere(1.0));
  CHECK(sphere.max_deg > 0.0);
  CHECK(sphere.offset > 0.0);
  CHECK(sphere.offset < 0.01);
}
