#include "asymcone/field.hpp"

#include "asymcone/errors.hpp"
#include "asymcone/mesh_io.hpp"
#include "face_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace asymcone {

using detail::barycentric;
using detail::unfold;

std::string_view to_string(Termination t) {
  switch (t) {
  case Termination::None: return "none";
  case Termination::Boundary: return "boundary";
  case Termination::MaxLength: return "max_length";
  case Termination::Elliptic: return "elliptic";
  case Termination::ClosedLoop: return "closed_loop";
  }
  return "?";
}

namespace {

Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + d1 / (d1 - d3) * ab;
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + d2 / (d2 - d6) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b);
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

struct WalkResult {
  int face = -1;
  Vec3 x = Vec3::Zero();
  Vec3 d = Vec3::Zero();
  double walked = 0.0;
  bool boundary = false;
};

class Tracer {
public:
  Tracer(const TriangleMesh& mesh, const CrossField& field, const TraceConfig& cfg)
      : mesh_(mesh), field_(field), cfg_(cfg) {
    const std::size_t nf = mesh.num_faces();
    neighbor_.assign(nf, {-1, -1, -1});
    std::map<std::pair<int, int>, std::pair<int, int>> half;  // edge -> (face, local edge)
    for (std::size_t f = 0; f < nf; ++f) {
      const Face& t = mesh.face(static_cast<int>(f));
      for (int k = 0; k < 3; ++k) {
        const auto key = std::minmax(t[static_cast<std::size_t>((k + 1) % 3)], t[static_cast<std::size_t>((k + 2) % 3)]);
        auto it = half.find(key);
        if (it == half.end()) {
          half.emplace(key, std::make_pair(static_cast<int>(f), k));
        } else {
          const auto [g, j] = it->second;
          neighbor_[f][static_cast<std::size_t>(k)] = g;
          neighbor_[static_cast<std::size_t>(g)][static_cast<std::size_t>(j)] = static_cast<int>(f);
        }
      }
    }
    h_ = cfg.step * mesh.mean_edge_length();
    max_len_ = cfg.max_length * mesh.mean_edge_length();
  }

  double step() const { return h_; }

  // Moves along the surface from (f, x) in direction d for arc length `len`,
  // unfolding d across every edge crossed.
  WalkResult walk(int f, Vec3 x, Vec3 d, double len, std::vector<Vec3>* crossings) const {
    WalkResult r;
    int entry = -1;
    double remaining = len;
    for (int guard = 0; guard < 100000; ++guard) {
      const Face& t = mesh_.face(f);
      const Vec3 &a = mesh_.vertex(t[0]), &b = mesh_.vertex(t[1]), &c = mesh_.vertex(t[2]);
      Vec3 lam = barycentric(a, b, c, x).cwiseMax(0.0);
      lam /= lam.sum();
      x = lam[0] * a + lam[1] * b + lam[2] * c;
      const Vec3 g = barycentric(a, b, c, x + d) - barycentric(a, b, c, x);
      double t_exit = std::numeric_limits<double>::infinity();
      int k_exit = -1;
      for (int k = 0; k < 3; ++k) {
        if (k == entry || g[k] >= -1e-15) continue;
        const double tk = lam[k] / -g[k];
        if (tk < t_exit) {
          t_exit = tk;
          k_exit = k;
        }
      }
      if (t_exit >= remaining) {
        r.x = x + remaining * d;
        r.walked += remaining;
        r.face = f;
        r.d = d;
        return r;
      }
      x += t_exit * d;
      r.walked += t_exit;
      remaining -= t_exit;
      lam = barycentric(a, b, c, x).cwiseMax(0.0);
      lam[k_exit] = 0.0;
      lam /= lam.sum();
      x = lam[0] * a + lam[1] * b + lam[2] * c;
      if (crossings && (crossings->empty() || (crossings->back() - x).norm() > 1e-9 * h_)) crossings->push_back(x);

      const int nb = neighbor_[static_cast<std::size_t>(f)][static_cast<std::size_t>(k_exit)];
      if (nb < 0) {
        r.face = f;
        r.x = x;
        r.d = d;
        r.boundary = true;
        return r;
      }
      const int p = t[static_cast<std::size_t>((k_exit + 1) % 3)], q = t[static_cast<std::size_t>((k_exit + 2) % 3)];
      const Vec3 axis = (mesh_.vertex(q) - mesh_.vertex(p)).normalized();
      const Vec3 nf = mesh_.face_normal(f), ng = mesh_.face_normal(nb);
      d = unfold(d, axis, nf, ng);
      d = (d - d.dot(ng) * ng).normalized();
      const Face& u = mesh_.face(nb);
      for (int k = 0; k < 3; ++k)
        if (u[static_cast<std::size_t>(k)] != p && u[static_cast<std::size_t>(k)] != q) entry = k;
      f = nb;
    }
    r.face = f;
    r.x = x;
    r.d = d;
    r.boundary = true;  // could not make progress
    return r;
  }

  static Vec3 pick(const std::array<Vec3, 2>& dirs, const Vec3& ref) {
    const double d0 = dirs[0].dot(ref), d1 = dirs[1].dot(ref);
    if (std::abs(d1) > std::abs(d0)) return d1 < 0.0 ? Vec3(-dirs[1]) : dirs[1];
    return d0 < 0.0 ? Vec3(-dirs[0]) : dirs[0];
  }

  Vec3 in_plane(int f, const Vec3& d) const {
    const Vec3 n = mesh_.face_normal(f);
    return (d - d.dot(n) * n).normalized();
  }

  // One half of a line: midpoint-rule steps from the seed along d0.
  Termination half(int f, Vec3 x, Vec3 d0, const Vec3& seed, bool detect_loop,
                   std::vector<Vec3>& pts) const {
    Vec3 prev = in_plane(f, d0);
    double arc = 0.0;
    const auto max_steps = static_cast<long>(4.0 * max_len_ / h_) + 16;
    for (long s = 0; s < max_steps; ++s) {
      if (arc >= max_len_) return Termination::MaxLength;
      const auto here = face_directions(mesh_, field_, f, x);
      if (!here) return Termination::Elliptic;
      const Vec3 d1 = pick(*here, prev);
      Vec3 d2 = d1;
      const WalkResult mid = walk(f, x, d1, 0.5 * h_, nullptr);
      if (!mid.boundary) {
        if (const auto there = face_directions(mesh_, field_, mid.face, mid.x)) {
          d2 = pick(*there, mid.d);
          if (mid.face != f) d2 = in_plane(f, d2);
          if (d2.dot(d1) < 0.0) d2 = -d2;
        }
      }
      const WalkResult next = walk(f, x, d2, h_, &pts);
      if (pts.empty() || (pts.back() - next.x).norm() > 1e-9 * h_) pts.push_back(next.x);
      arc += next.walked;
      if (next.boundary) return Termination::Boundary;
      if (next.walked <= 0.0) return Termination::Boundary;
      if (detect_loop && arc > 4.0 * h_) {
        const Vec3 seg = next.x - x;
        const double tt = std::clamp((seed - x).dot(seg) / std::max(seg.squaredNorm(), 1e-300), 0.0, 1.0);
        if ((x + tt * seg - seed).norm() <= cfg_.loop_tolerance * h_ && next.d.dot(d0) > 0.0) {
          if ((pts.back() - seed).norm() > 1e-9 * h_) pts.push_back(seed);
          return Termination::ClosedLoop;
        }
      }
      prev = next.d;
      f = next.face;
      x = next.x;
    }
    return Termination::MaxLength;
  }

private:
  const TriangleMesh& mesh_;
  const CrossField& field_;
  TraceConfig cfg_;
  std::vector<std::array<int, 3>> neighbor_;
  double h_ = 0.0;
  double max_len_ = 0.0;
};

} // namespace

FaceHit closest_face(const TriangleMesh& mesh, const Vec3& x) {
  FaceHit hit;
  hit.distance = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const Face& t = mesh.face(static_cast<int>(f));
    const Vec3 p = closest_on_triangle(x, mesh.vertex(t[0]), mesh.vertex(t[1]), mesh.vertex(t[2]));
    const double d = (p - x).norm();
    if (d < hit.distance) {
      hit = {static_cast<int>(f), p, d};
    }
  }
  return hit;
}

std::vector<Polyline> trace_lines(const TriangleMesh& mesh, const CrossField& field,
                                  const std::vector<Vec3>& seeds, const TraceConfig& config) {
  if (!(config.step > 0.0) || !(config.max_length > config.step))
    throw PreconditionError("trace config needs step > 0 and max_length > step");
  if (field.pairs.size() != mesh.num_vertices())
    throw PreconditionError("cross field was built on a different mesh");
  const Tracer tracer(mesh, field, config);
  const double tol = config.seed_tolerance * mesh.bounding_box_diagonal();
  std::vector<Polyline> out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const FaceHit hit = closest_face(mesh, seeds[i]);
    if (hit.face < 0 || hit.distance > tol) {
      std::ostringstream msg;
      msg << "seed " << i << " lies " << hit.distance << " away from the mesh";
      throw SeedError(msg.str());
    }
    Polyline base;
    base.seed = hit.point;
    base.seed_index = static_cast<int>(i);
    const auto dirs = face_directions(mesh, field, hit.face, hit.point);
    if (!dirs) {
      base.start = base.end = Termination::Elliptic;
      out.push_back(base);
      continue;
    }
    const int families = std::abs((*dirs)[0].dot((*dirs)[1])) > 1.0 - 1e-12 ? 1 : 2;
    for (int fam = 0; fam < families; ++fam) {
      Polyline line = base;
      line.family = fam;
      const Vec3 d0 = config.flip_initial ? Vec3(-(*dirs)[static_cast<std::size_t>(fam)])
                                          : (*dirs)[static_cast<std::size_t>(fam)];
      std::vector<Vec3> fwd{hit.point};
      line.end = tracer.half(hit.face, hit.point, d0, hit.point, true, fwd);
      if (line.end == Termination::ClosedLoop) {
        line.start = Termination::ClosedLoop;
        line.points = std::move(fwd);
        line.seed_point = 0;
      } else {
        std::vector<Vec3> back{hit.point};
        line.start = tracer.half(hit.face, hit.point, -d0, hit.point, false, back);
        line.points.assign(back.rbegin(), back.rend());
        line.seed_point = static_cast<int>(back.size()) - 1;
        line.points.insert(line.points.end(), fwd.begin() + 1, fwd.end());
      }
      out.push_back(std::move(line));
    }
  }
  return out;
}

std::string export_lines(const std::vector<Polyline>& lines, LineFormat format) {
  std::ostringstream out;
  if (format == LineFormat::ObjLines) {
    out << "# asymptotic lines: " << lines.size() << '\n';
    for (const Polyline& l : lines)
      for (const Vec3& p : l.points) out << "v " << fmt17(p.x()) << ' ' << fmt17(p.y()) << ' ' << fmt17(p.z()) << '\n';
    std::size_t base = 1;
    for (const Polyline& l : lines) {
      if (l.points.size() >= 2) {
        out << 'l';
        for (std::size_t k = 0; k < l.points.size(); ++k) out << ' ' << base + k;
        out << '\n';
      }
      base += l.points.size();
    }
  } else {
    out << "line,order,x,y,z,termination\n";
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t k = 0; k < lines[i].points.size(); ++k) {
        const Vec3& p = lines[i].points[k];
        out << i << ',' << k << ',' << fmt17(p.x()) << ',' << fmt17(p.y()) << ',' << fmt17(p.z()) << ','
            << to_string(lines[i].end) << '\n';
      }
  }
  return out.str();
}

} // namespace asymcone
