#include "asymcone/smooth.hpp"

#include "asymcone/errors.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace asymcone {

TriangleMesh inscribe_mesh(const ParametricSurface& surface, int nu, int nv, GridPattern pattern) {
  if (nu < 2 || nv < 2) throw PreconditionError("grid resolution must be >= 2 in both directions");
  const bool wrap = surface.periodic_u();
  if (wrap && nu < 3) throw PreconditionError("a periodic chart needs nu >= 3");
  const ChartDomain& d = surface.domain();
  const double du = (d.u1 - d.u0) / nu, dv = (d.v1 - d.v0) / nv;
  const int cols = wrap ? nu : nu + 1;

  std::vector<Vec3> verts;
  std::vector<Vec2> tags;
  std::vector<std::vector<int>> id(static_cast<std::size_t>(nv + 1));
  for (int j = 0; j <= nv; ++j) {
    const double v = (j == nv) ? d.v1 : d.v0 + j * dv;
    const bool pole = (j == 0 && surface.pole_v0()) || (j == nv && surface.pole_v1());
    auto& row = id[static_cast<std::size_t>(j)];
    if (pole) {
      row.assign(static_cast<std::size_t>(cols), static_cast<int>(verts.size()));
      verts.push_back(surface.position(d.u0, v));
      tags.emplace_back(d.u0, v);
      continue;
    }
    for (int i = 0; i < cols; ++i) {
      const double u = (i == nu) ? d.u1 : d.u0 + i * du;
      row.push_back(static_cast<int>(verts.size()));
      verts.push_back(surface.position(u, v));
      tags.emplace_back(u, v);
    }
  }

  std::vector<Face> faces;
  auto tri = [&faces](int a, int b, int c) {
    if (a != b && b != c && a != c) faces.push_back({a, b, c});
  };
  auto at = [&](int i, int j) { return id[static_cast<std::size_t>(j)][static_cast<std::size_t>(i % cols)]; };
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) {
      const int a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), e = at(i, j + 1);
      if (pattern == GridPattern::Diagonal) {
        tri(a, b, c);
        tri(a, c, e);
        continue;
      }
      const double uc = d.u0 + (i + 0.5) * du, vc = d.v0 + (j + 0.5) * dv;
      const int m = static_cast<int>(verts.size());
      verts.push_back(surface.position(uc, vc));
      tags.emplace_back(uc, vc);
      tri(a, b, m);
      tri(b, c, m);
      tri(c, e, m);
      tri(e, a, m);
    }
  }
  return TriangleMesh(std::move(verts), std::move(faces), std::move(tags));
}

TriangleMesh make_lantern(double radius, double height, int slices, int sectors) {
  if (slices < 2 || sectors < 3) throw PreconditionError("lantern needs slices >= 2 and sectors >= 3");
  if (!(radius > 0.0) || !(height > 0.0)) throw PreconditionError("lantern radius and height must be > 0");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Vec3> verts;
  std::vector<Vec2> tags;
  for (int k = 0; k <= slices; ++k) {
    const double z = height * k / slices;
    for (int j = 0; j < sectors; ++j) {
      const double theta = (two_pi * j + std::numbers::pi * (k % 2)) / sectors;
      verts.emplace_back(radius * std::cos(theta), radius * std::sin(theta), z);
      tags.emplace_back(theta, z);
    }
  }
  auto vid = [sectors](int k, int j) { return k * sectors + (j % sectors); };
  std::vector<Face> faces;
  for (int k = 0; k < slices; ++k) {
    for (int j = 0; j < sectors; ++j) {
      if (k % 2 == 0) {
        faces.push_back({vid(k, j), vid(k, j + 1), vid(k + 1, j)});
        faces.push_back({vid(k + 1, j), vid(k, j + 1), vid(k + 1, j + 1)});
      } else {
        faces.push_back({vid(k, j), vid(k, j + 1), vid(k + 1, j + 1)});
        faces.push_back({vid(k + 1, j), vid(k, j), vid(k + 1, j + 1)});
      }
    }
  }
  return TriangleMesh(std::move(verts), std::move(faces), std::move(tags));
}

TriangleMesh make_icosphere(double radius, int subdivisions) {
  if (subdivisions < 0) throw PreconditionError("subdivisions must be >= 0");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                         {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<Face> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7}, {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const int id = static_cast<int>(v.size());
      v.push_back((v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)]).normalized());
      mid.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(f.size() * 4);
    for (const Face& tri : f) {
      const int ab = midpoint(tri[0], tri[1]), bc = midpoint(tri[1], tri[2]), ca = midpoint(tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  for (auto& p : v) p *= radius;
  return TriangleMesh(std::move(v), std::move(f));
}

TriangleMesh make_flat_grid(double extent, int n) {
  return inscribe_mesh(make_plane(extent), n, n, GridPattern::Diagonal);
}

} // namespace asymcone
