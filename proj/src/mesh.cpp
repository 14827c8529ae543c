#include "asymcone/mesh.hpp"

#include "asymcone/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <tuple>

namespace asymcone {

namespace {

struct HalfEdge {
  int lo;
  int hi;
  int face;
  bool forward;  // face traverses lo -> hi

  auto key() const { return std::tie(lo, hi, face); }
  bool operator<(const HalfEdge& o) const { return key() < o.key(); }
};

std::vector<HalfEdge> sorted_half_edges(std::span<const Face> faces) {
  std::vector<HalfEdge> hes;
  hes.reserve(faces.size() * 3);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Face& t = faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = t[static_cast<std::size_t>(k)];
      const int b = t[static_cast<std::size_t>((k + 1) % 3)];
      hes.push_back({std::min(a, b), std::max(a, b), static_cast<int>(f), a < b});
    }
  }
  std::sort(hes.begin(), hes.end());
  return hes;
}

// Calls fn(first, count) for each run of half-edges sharing an undirected edge.
template <typename Fn>
void for_each_edge_group(const std::vector<HalfEdge>& hes, Fn&& fn) {
  std::size_t i = 0;
  while (i < hes.size()) {
    std::size_t j = i + 1;
    while (j < hes.size() && hes[j].lo == hes[i].lo && hes[j].hi == hes[i].hi) ++j;
    fn(i, j - i);
    i = j;
  }
}

std::string edge_name(const HalfEdge& he) {
  return "(" + std::to_string(he.lo) + ", " + std::to_string(he.hi) + ")";
}

} // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces,
                           std::vector<Vec2> chart_tags)
    : vertices_(std::move(vertices)), faces_(std::move(faces)), tags_(std::move(chart_tags)) {
  const int nv = static_cast<int>(vertices_.size());
  if (!tags_.empty() && tags_.size() != vertices_.size())
    throw TopologyError("chart tag count does not match vertex count");

  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& t = faces_[f];
    for (int idx : t)
      if (idx < 0 || idx >= nv)
        throw TopologyError("face " + std::to_string(f) + " references vertex " +
                            std::to_string(idx) + " out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw TopologyError("face " + std::to_string(f) + " is degenerate (repeated vertex)");
  }

  const auto hes = sorted_half_edges(faces_);
  for_each_edge_group(hes, [&](std::size_t first, std::size_t count) {
    ++num_edges_;
    if (count > 2)
      throw TopologyError("non-manifold edge " + edge_name(hes[first]) + " has " +
                          std::to_string(count) + " incident faces");
    if (count == 1) {
      closed_ = false;
    } else if (hes[first].forward == hes[first + 1].forward) {
      throw OrientationError("faces " + std::to_string(hes[first].face) + " and " +
                             std::to_string(hes[first + 1].face) +
                             " traverse edge " + edge_name(hes[first]) + " in the same direction");
    }
  });
  if (faces_.empty()) closed_ = false;

  vertex_faces_.assign(vertices_.size(), {});
  for (std::size_t f = 0; f < faces_.size(); ++f)
    for (int idx : faces_[f]) vertex_faces_[static_cast<std::size_t>(idx)].push_back(static_cast<int>(f));
}

Vec3 TriangleMesh::face_normal(int f) const {
  const Face& t = face(f);
  const Vec3 n = (vertex(t[1]) - vertex(t[0])).cross(vertex(t[2]) - vertex(t[0]));
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

Vec3 TriangleMesh::face_centroid(int f) const {
  const Face& t = face(f);
  return (vertex(t[0]) + vertex(t[1]) + vertex(t[2])) / 3.0;
}

double TriangleMesh::face_area(int f) const {
  const Face& t = face(f);
  return 0.5 * (vertex(t[1]) - vertex(t[0])).cross(vertex(t[2]) - vertex(t[0])).norm();
}

double TriangleMesh::signed_volume() const {
  double vol = 0.0;
  for (const Face& t : faces_)
    vol += vertex(t[0]).dot(vertex(t[1]).cross(vertex(t[2])));
  return vol / 6.0;
}

double TriangleMesh::bounding_box_diagonal() const {
  if (vertices_.empty()) return 0.0;
  Vec3 lo = vertices_.front(), hi = vertices_.front();
  for (const Vec3& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

double TriangleMesh::mean_edge_length() const {
  const auto hes = sorted_half_edges(faces_);
  double sum = 0.0;
  std::size_t n = 0;
  for_each_edge_group(hes, [&](std::size_t first, std::size_t) {
    sum += (vertex(hes[first].hi) - vertex(hes[first].lo)).norm();
    ++n;
  });
  return n ? sum / static_cast<double>(n) : 0.0;
}

TriangleMesh TriangleMesh::flipped() const {
  std::vector<Face> f = faces_;
  for (Face& t : f) std::swap(t[1], t[2]);
  return TriangleMesh(vertices_, std::move(f), tags_);
}

TriangleMesh TriangleMesh::with_vertices(std::vector<Vec3> vertices) const {
  if (vertices.size() != vertices_.size())
    throw TopologyError("vertex count mismatch in with_vertices");
  TriangleMesh m = *this;
  m.vertices_ = std::move(vertices);
  return m;
}

EdgeTable build_edges(const TriangleMesh& mesh) {
  EdgeTable table;
  const auto hes = sorted_half_edges(mesh.faces());
  for_each_edge_group(hes, [&](std::size_t first, std::size_t count) {
    const HalfEdge& a = hes[first];
    if (count == 1) {
      table.boundary.push_back({{a.lo, a.hi}, a.face});
      return;
    }
    if (count != 2) throw TopologyError("non-manifold edge " + edge_name(a));
    const HalfEdge& b = hes[first + 1];  // a.face < b.face after sorting

    EdgeRecord e;
    e.vertices = {a.lo, a.hi};
    e.p0 = mesh.vertex(a.lo);
    e.p1 = mesh.vertex(a.hi);
    const Vec3 d = e.p1 - e.p0;
    e.length = d.norm();
    if (e.length == 0.0) throw TopologyError("zero-length edge " + edge_name(a));
    e.dir = d / e.length;
    e.faces = {a.face, b.face};
    e.n1 = mesh.face_normal(a.face);
    e.n2 = mesh.face_normal(b.face);

    // The face running along `dir` in its own winding is the one whose normal
    // comes first in the convexity cross product.
    const Vec3& n_fwd = a.forward ? e.n1 : e.n2;
    const Vec3& n_bwd = a.forward ? e.n2 : e.n1;
    const Vec3 cr = n_fwd.cross(n_bwd);
    double angle = std::atan2(cr.norm(), n_fwd.dot(n_bwd));
    if (cr.dot(e.dir) < 0.0) angle = -angle;
    if (std::abs(angle) < kFlatAngleTol) angle = 0.0;
    e.angle = angle;

    const Vec3 bis = e.n1 + e.n2;
    const double bl = bis.norm();
    if (bl < 1e-12)
      throw TopologyError("edge " + edge_name(a) + " is folded flat (opposite face normals)");
    e.plus = angle == 0.0 ? e.n1 : Vec3(bis / bl);
    e.minus = e.dir.cross(e.plus);
    table.interior.push_back(e);
  });
  return table;
}

double circumradius(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
  const double area2 = (b - a).cross(c - a).norm();  // twice the area
  if (area2 == 0.0) return std::numeric_limits<double>::infinity();
  return la * lb * lc / (2.0 * area2);
}

MeshQuality fatness(const TriangleMesh& mesh) {
  MeshQuality q;
  q.mean_edge_length = mesh.mean_edge_length();
  q.fatness = mesh.num_faces() ? std::numeric_limits<double>::infinity() : 0.0;
  q.simplex_fatness.reserve(mesh.num_faces());
  q.simplex_size.reserve(mesh.num_faces());
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const Face& t = mesh.face(static_cast<int>(f));
    const Vec3 &a = mesh.vertex(t[0]), &b = mesh.vertex(t[1]), &c = mesh.vertex(t[2]);
    const std::array<double, 3> len{(b - a).norm(), (c - b).norm(), (a - c).norm()};
    const double eps = *std::max_element(len.begin(), len.end());
    double theta = 0.0;
    if (eps > 0.0) {
      theta = *std::min_element(len.begin(), len.end()) / eps;
      theta = std::min(theta, mesh.face_area(static_cast<int>(f)) / (eps * eps));
    }
    q.simplex_fatness.push_back(theta);
    q.simplex_size.push_back(eps);
    q.fatness = std::min(q.fatness, theta);
    const double r = circumradius(a, b, c);
    if (std::isfinite(r)) q.max_circumradius = std::max(q.max_circumradius, r);
  }
  return q;
}

TriangleMesh perturb_vertices(const TriangleMesh& mesh, double amplitude, std::uint64_t seed) {
  if (amplitude < 0.0) throw PreconditionError("perturbation amplitude must be >= 0");
  std::vector<Vec3> pts(mesh.vertices().begin(), mesh.vertices().end());
  if (amplitude == 0.0) return mesh.with_vertices(std::move(pts));
  std::mt19937_64 rng(seed);
  for (Vec3& p : pts) {
    Vec3 w;
    do {
      w = Vec3(2.0 * unit_uniform(rng()) - 1.0, 2.0 * unit_uniform(rng()) - 1.0,
               2.0 * unit_uniform(rng()) - 1.0);
    } while (w.squaredNorm() > 1.0);
    p += amplitude * w;
  }
  return mesh.with_vertices(std::move(pts));
}

std::vector<bool> boundary_vertices(const TriangleMesh& mesh) {
  std::vector<bool> on(mesh.num_vertices(), false);
  const auto hes = sorted_half_edges(mesh.faces());
  for_each_edge_group(hes, [&](std::size_t first, std::size_t count) {
    if (count == 1) {
      on[static_cast<std::size_t>(hes[first].lo)] = true;
      on[static_cast<std::size_t>(hes[first].hi)] = true;
    }
  });
  return on;
}

std::vector<bool> vertices_away_from_boundary(const TriangleMesh& mesh, double margin) {
  const auto on = boundary_vertices(mesh);
  std::vector<Vec3> rim;
  for (std::size_t v = 0; v < on.size(); ++v)
    if (on[v]) rim.push_back(mesh.vertex(static_cast<int>(v)));
  std::vector<bool> away(mesh.num_vertices(), true);
  const double m2 = margin * margin;
  for (std::size_t v = 0; v < away.size(); ++v) {
    const Vec3& p = mesh.vertex(static_cast<int>(v));
    for (const Vec3& q : rim)
      if ((p - q).squaredNorm() <= m2) {
        away[v] = false;
        break;
      }
  }
  return away;
}

} // namespace asymcone
