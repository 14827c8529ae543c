#include "asymcone/field.hpp"

#include "asymcone/errors.hpp"
#include "asymcone/mesh_io.hpp"
#include "face_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

namespace asymcone {

using detail::barycentric;
using detail::unfold;

std::string_view to_string(PlaneMode mode) {
  return mode == PlaneMode::Face ? "face" : "smooth";
}

CrossField build_cross_field(const TriangleMesh& mesh, double radius, PlaneMode mode,
                             const ParametricSurface* surface, double tol) {
  if (!(radius > 0.0)) throw PreconditionError("ball radius must be > 0");
  if (mode == PlaneMode::Smooth) {
    if (surface == nullptr) throw PreconditionError("smooth plane mode needs a reference surface");
    if (!mesh.has_chart_tags()) throw TagError("smooth plane mode needs per-vertex chart tags");
  }
  const FormAssembler assembler(build_edges(mesh).interior);
  const std::size_t n = mesh.num_vertices();
  CrossField field;
  field.radius = radius;
  field.mode = mode;
  field.forms.reserve(n);
  field.eigen.reserve(n);
  field.classes.reserve(n);
  field.plane_normals.reserve(n);
  field.pairs.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Vec3& m = mesh.vertex(static_cast<int>(v));
    const QuadraticForm3 q = assembler.assemble({m, radius}, MeasureMode::Exact);
    const EigenData eig = eigendecompose(q);
    Vec3 normal = Vec3::Zero();
    if (mode == PlaneMode::Smooth) {
      const Vec2 uv = mesh.chart_tags()[v];
      normal = surface->normal(uv.x(), uv.y());
    } else {
      for (int f : mesh.vertex_faces()[v]) normal += mesh.face_area(f) * mesh.face_normal(f);
      normal.normalize();
    }
    field.forms.push_back(q);
    field.eigen.push_back(eig);
    field.classes.push_back(classify(eig, tol));
    field.plane_normals.push_back(normal);
    field.pairs.push_back(intersect_plane(q, normal, tol));
  }
  return field;
}

void write_field_csv(std::ostream& out, const CrossField& field) {
  out << "vertex,class,pair,d1x,d1y,d1z,d2x,d2y,d2z,lambda1,lambda2,lambda3\n";
  for (std::size_t v = 0; v < field.pairs.size(); ++v) {
    const DirectionPair& p = field.pairs[v];
    out << v << ',' << to_string(field.classes[v].kind) << ',' << to_string(p.kind);
    for (int k = 0; k < 2; ++k) {
      const Vec3 d = k < p.count() ? p.dirs[static_cast<std::size_t>(k)] : Vec3::Zero();
      out << ',' << fmt17(d.x()) << ',' << fmt17(d.y()) << ',' << fmt17(d.z());
    }
    for (double l : field.eigen[v].values) out << ',' << fmt17(l);
    out << '\n';
  }
}

namespace {

double pair_change_deg(const std::array<Vec3, 2>& a, const std::array<Vec3, 2>& b) {
  const double straight = std::max(line_angle(a[0], b[0]), line_angle(a[1], b[1]));
  const double crossed = std::max(line_angle(a[0], b[1]), line_angle(a[1], b[0]));
  return std::min(straight, crossed) * 180.0 / std::numbers::pi;
}

} // namespace

std::optional<std::array<Vec3, 2>> face_directions(const TriangleMesh& mesh, const CrossField& field,
                                                   int face, const Vec3& x) {
  using cplx = std::complex<double>;
  const Face& t = mesh.face(face);
  const Vec3 &a = mesh.vertex(t[0]), &b = mesh.vertex(t[1]), &c = mesh.vertex(t[2]);
  const Vec3 n = mesh.face_normal(face);
  const Vec3 t1 = (b - a).normalized();
  const Vec3 t2 = n.cross(t1);
  Vec3 lam = barycentric(a, b, c, x).cwiseMax(0.0);
  lam /= lam.sum();

  // Each pair {d1, d2} is stored as the symmetric functions of the doubled
  // angles, z1 + z2 and z1 z2, which are sign and order free.
  cplx s = 0.0, p = 0.0;
  double weight = 0.0;
  for (int k = 0; k < 3; ++k) {
    const DirectionPair& pair = field.pairs[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
    if (pair.kind != PairKind::One && pair.kind != PairKind::Two) continue;
    std::array<cplx, 2> z;
    for (int j = 0; j < 2; ++j) {
      const Vec3& d = pair.dirs[static_cast<std::size_t>(pair.kind == PairKind::Two ? j : 0)];
      const double ang = std::atan2(d.dot(t2), d.dot(t1));
      z[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * ang);
    }
    const double w = lam[k];
    s += w * (z[0] + z[1]);
    p += w * (z[0] * z[1]);
    weight += w;
  }
  if (weight <= 0.0) return std::nullopt;
  s /= weight;
  p /= weight;
  const cplx disc = std::sqrt(s * s - 4.0 * p);
  std::array<cplx, 2> roots{0.5 * (s + disc), 0.5 * (s - disc)};
  const double big = std::max(std::abs(roots[0]), std::abs(roots[1]));
  if (big < 1e-12) return std::nullopt;
  if (std::abs(roots[0]) < 1e-12) roots[0] = roots[1];
  if (std::abs(roots[1]) < 1e-12) roots[1] = roots[0];
  std::array<Vec3, 2> out;
  for (std::size_t j = 0; j < 2; ++j) {
    const double ang = 0.5 * std::arg(roots[j]);
    out[j] = std::cos(ang) * t1 + std::sin(ang) * t2;
  }
  return out;
}

RotationReport field_rotation(const TriangleMesh& mesh, const CrossField& field) {
  RotationReport rep;
  for (const EdgeRecord& e : build_edges(mesh).interior) {
    const int fa = e.faces[0], fb = e.faces[1];
    const auto pa = face_directions(mesh, field, fa, mesh.face_centroid(fa));
    const auto pb = face_directions(mesh, field, fb, mesh.face_centroid(fb));
    if (!pa || !pb) continue;
    const Vec3 na = mesh.face_normal(fa), nb = mesh.face_normal(fb);
    const std::array<Vec3, 2> moved{unfold((*pb)[0], e.dir, nb, na), unfold((*pb)[1], e.dir, nb, na)};
    const double deg = pair_change_deg(*pa, moved);
    rep.max_deg = std::max(rep.max_deg, deg);
    ++rep.pairs_checked;
    if (deg >= 45.0) ++rep.pairs_over;
  }
  return rep;
}

} // namespace asymcone
