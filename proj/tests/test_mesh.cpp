#include "doctest.h"

#include "asymcone/errors.hpp"
#include "asymcone/mesh_io.hpp"
#include "asymcone/smooth.hpp"
#include "fixtures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace asymcone;

namespace {

TriangleMesh from_text(const std::string& text, MeshFormat fmt) {
  std::istringstream in(text);
  return load_mesh(in, fmt);
}

const char* kTetraOff = "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";

} // namespace

TEST_CASE("load_mesh reads a tetrahedron in every format") {
  const TriangleMesh off = from_text(kTetraOff, MeshFormat::OFF);
  CHECK(off.num_vertices() == 4);
  CHECK(off.num_edges() == 6);
  CHECK(off.num_faces() == 4);
  CHECK(off.is_closed());
  CHECK(off.signed_volume() == doctest::Approx(1.0 / 6.0));

  const TriangleMesh obj = from_text("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 1 3 2\nf 1 2 4\nf 1 4 3\nf 2 3 4\n",
                                     MeshFormat::OBJ);
  const TriangleMesh ply = from_text(
      "ply\nformat ascii 1.0\nelement vertex 4\nproperty float x\nproperty float y\nproperty float z\n"
      "element face 4\nproperty list uchar int vertex_indices\nend_header\n"
      "0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n",
      MeshFormat::PLY);
  for (const TriangleMesh* m : {&obj, &ply}) {
    REQUIRE(m->num_faces() == 4);
    for (std::size_t f = 0; f < 4; ++f) CHECK(m->faces()[f] == off.faces()[f]);
    for (std::size_t v = 0; v < 4; ++v) CHECK(m->vertices()[v] == off.vertices()[v]);
  }
}

TEST_CASE("load_mesh rejects bad input") {
  CHECK_THROWS_AS(from_text("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 4 3\n", MeshFormat::OBJ), ParseError);
  try {
    from_text("OFF\n3 1 0\n0 0 0\n1 0 x\n0 1 0\n3 0 1 2\n", MeshFormat::OFF);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  // three faces on one edge
  CHECK_THROWS_AS(from_text("OFF\n5 3 0\n0 0 0\n1 0 0\n0 1 0\n0 -1 0\n0 0 1\n3 0 1 2\n3 1 0 3\n3 0 1 4\n",
                            MeshFormat::OFF),
                  TopologyError);
  // both faces traverse the shared edge the same way
  CHECK_THROWS_AS(from_text("OFF\n4 2 0\n0 0 0\n1 0 0\n0 1 0\n0 -1 0\n3 0 1 2\n3 0 1 3\n", MeshFormat::OFF),
                  OrientationError);
  CHECK_THROWS_AS(from_text("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 1\n", MeshFormat::OFF), TopologyError);
  CHECK_THROWS_AS(from_text("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 5\n", MeshFormat::OFF), ParseError);
  // inward-oriented closed mesh
  CHECK_THROWS_AS(from_text("OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n",
                            MeshFormat::OFF),
                  OrientationError);
}

TEST_CASE("cube volume and edges") {
  const TriangleMesh cube = fixtures::unit_cube();
  CHECK(cube.signed_volume() == doctest::Approx(1.0).epsilon(1e-14));
  const EdgeTable edges = build_edges(cube);
  CHECK(edges.interior.size() == 18);
  CHECK(edges.boundary.empty());
  int right = 0, flat = 0;
  for (const EdgeRecord& e : edges.interior) {
    if (std::abs(e.angle - std::numbers::pi / 2) < 1e-12) ++right;
    if (e.angle == 0.0) ++flat;
  }
  CHECK(right == 12);
  CHECK(flat == 6);

  const EdgeTable rev = build_edges(cube.flipped());
  for (std::size_t i = 0; i < rev.interior.size(); ++i) {
    CHECK(rev.interior[i].angle == doctest::Approx(-edges.interior[i].angle));
    CHECK((rev.interior[i].plus + edges.interior[i].plus).norm() < 1e-12);
  }
}

TEST_CASE("edge frame invariants") {
  const TriangleMesh mesh = inscribe_mesh(make_catenoid(), 24, 8);
  for (const TriangleMesh& m : {mesh, mesh.flipped()}) {
    for (const EdgeRecord& e : build_edges(m).interior) {
      Mat3 frame;
      frame << e.plus, e.minus, e.dir;
      CHECK((frame.transpose() * frame - Mat3::Identity()).norm() < 1e-12);
      CHECK(frame.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(e.plus.dot(e.n1) == doctest::Approx(e.plus.dot(e.n2)).epsilon(1e-12));
      CHECK(e.plus.dot(e.n1) > 0.0);
      CHECK(std::abs(e.angle) < std::numbers::pi);
      CHECK(e.vertices[0] < e.vertices[1]);
      CHECK(e.faces[0] < e.faces[1]);
    }
  }
}

TEST_CASE("flat and hinged edges") {
  const EdgeRecord flat = build_edges(fixtures::hinge(0.0)).interior.at(0);
  CHECK(flat.angle == 0.0);
  CHECK((flat.plus - Vec3(0, 0, 1)).norm() < 1e-15);

  const double a = 0.3;
  const EdgeTable t = build_edges(fixtures::hinge(a));
  REQUIRE(t.interior.size() == 1);
  CHECK(t.interior[0].angle == doctest::Approx(a).epsilon(1e-14));
  CHECK(t.boundary.size() == 4);
  CHECK(build_edges(fixtures::hinge(a).flipped()).interior[0].angle == doctest::Approx(-a).epsilon(1e-14));
}

TEST_CASE("fatness") {
  const double s3 = std::sqrt(3.0);
  const TriangleMesh tri({{0, 0, 0}, {1, 0, 0}, {0.5, s3 / 2, 0}}, {{0, 1, 2}});
  const MeshQuality q = fatness(tri);
  CHECK(q.simplex_size[0] == doctest::Approx(1.0));
  CHECK(q.fatness == doctest::Approx(s3 / 4).epsilon(1e-14));
  CHECK(q.max_circumradius == doctest::Approx(1.0 / s3));

  const TriangleMesh needle({{0, 0, 0}, {1, 0, 0}, {0.5, 1e-6, 0}}, {{0, 1, 2}});
  CHECK(fatness(needle).fatness <= 1e-6);

  double prev = 1.0;
  for (int n : {4, 8, 16, 32}) {
    const double f = fatness(make_lantern(1.0, 1.0, n * n, n)).fatness;
    CHECK(f < 0.6 * prev);
    prev = f;
  }
}

TEST_CASE("fatness is rigid and scale invariant") {
  const TriangleMesh mesh = inscribe_mesh(make_enneper(), 10, 10);
  const double base = fatness(mesh).fatness;
  CHECK(base > 0.0);
  CHECK(fatness(fixtures::moved(mesh, fixtures::random_motion(3))).fatness == doctest::Approx(base).epsilon(1e-12));
  std::vector<Vec3> scaled;
  for (const Vec3& p : mesh.vertices()) scaled.push_back(7.5 * p);
  CHECK(fatness(mesh.with_vertices(scaled)).fatness == doctest::Approx(base).epsilon(1e-12));
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) CHECK(fatness(mesh).simplex_fatness[f] >= base);
}

TEST_CASE("perturb_vertices") {
  const TriangleMesh mesh = inscribe_mesh(make_catenoid(), 12, 6);
  const TriangleMesh same = perturb_vertices(mesh, 0.0, 9);
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) CHECK(same.vertices()[i] == mesh.vertices()[i]);

  const TriangleMesh a = perturb_vertices(mesh, 0.05, 42);
  const TriangleMesh b = perturb_vertices(mesh, 0.05, 42);
  const TriangleMesh c = perturb_vertices(mesh, 0.05, 43);
  double maxd = 0.0;
  bool differs = false;
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    CHECK(a.vertices()[i] == b.vertices()[i]);
    differs = differs || a.vertices()[i] != c.vertices()[i];
    maxd = std::max(maxd, (a.vertices()[i] - mesh.vertices()[i]).norm());
  }
  CHECK(differs);
  CHECK(maxd <= 0.05);
  CHECK(maxd > 0.02);
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) CHECK(a.faces()[f] == mesh.faces()[f]);
}

TEST_CASE("write then load round trips") {
  const TriangleMesh mesh = perturb_vertices(inscribe_mesh(make_enneper(), 5, 4), 0.01, 5);
  for (MeshFormat fmt : {MeshFormat::OFF, MeshFormat::OBJ}) {
    std::ostringstream out;
    if (fmt == MeshFormat::OFF) write_off(out, mesh);
    else write_obj(out, mesh);
    const TriangleMesh back = from_text(out.str(), fmt);
    REQUIRE(back.num_vertices() == mesh.num_vertices());
    for (std::size_t i = 0; i < mesh.num_vertices(); ++i) CHECK(back.vertices()[i] == mesh.vertices()[i]);
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) CHECK(back.faces()[f] == mesh.faces()[f]);
  }
}

TEST_CASE("build_edges is deterministic") {
  std::ostringstream out;
  write_off(out, inscribe_mesh(make_catenoid(), 9, 5));
  const auto a = build_edges(from_text(out.str(), MeshFormat::OFF)).interior;
  const auto b = build_edges(from_text(out.str(), MeshFormat::OFF)).interior;
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].vertices == b[i].vertices);
    CHECK(a[i].angle == b[i].angle);
  }
}

TEST_CASE("boundary helpers") {
  const TriangleMesh grid = make_flat_grid(1.0, 4);
  const auto rim = boundary_vertices(grid);
  CHECK(std::count(rim.begin(), rim.end(), true) == 16);
  const auto away = vertices_away_from_boundary(grid, 0.6);
  CHECK(std::count(away.begin(), away.end(), true) == 1);
  CHECK(away[12]);
}
