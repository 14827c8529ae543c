#include "asymcone/cone.hpp"

#include "asymcone/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace asymcone {

std::string_view to_string(ConeClass c) {
  switch (c) {
  case ConeClass::AllSpace: return "AllSpace";
  case ConeClass::DoublePlane: return "DoublePlane";
  case ConeClass::LineOnly: return "LineOnly";
  case ConeClass::PointOnly: return "PointOnly";
  case ConeClass::GenuineCone: return "GenuineCone";
  case ConeClass::TwoPlanes: return "TwoPlanes";
  }
  return "?";
}

std::string_view to_string(PairKind k) {
  switch (k) {
  case PairKind::Empty: return "empty";
  case PairKind::One: return "one";
  case PairKind::Two: return "two";
  case PairKind::WholePlane: return "whole_plane";
  }
  return "?";
}

ConeClassification classify(const EigenData& eig, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("classification tolerance must be > 0");
  const double scale = std::max({std::abs(eig.values[0]), std::abs(eig.values[1]), std::abs(eig.values[2])});
  ConeClassification c;
  for (double l : eig.values) {
    if (scale == 0.0 || std::abs(l) <= tol * scale)
      ++c.inertia.zero;
    else if (l > 0.0)
      ++c.inertia.positive;
    else
      ++c.inertia.negative;
  }
  const Inertia& in = c.inertia;
  c.rank = 3 - in.zero;
  switch (c.rank) {
  case 0: c.kind = ConeClass::AllSpace; break;
  case 1: c.kind = ConeClass::DoublePlane; break;
  case 2: c.kind = (in.positive == 1) ? ConeClass::TwoPlanes : ConeClass::LineOnly; break;
  default: c.kind = (in.positive == 0 || in.negative == 0) ? ConeClass::PointOnly : ConeClass::GenuineCone; break;
  }
  return c;
}

ConeClassification classify(const QuadraticForm3& form, double tol) {
  return classify(eigendecompose(form), tol);
}

DirectionPair DirectionPair::one(const Vec3& d) {
  return {PairKind::One, {canonical_sign(d.normalized()), Vec3::Zero()}};
}

DirectionPair DirectionPair::two(const Vec3& a, const Vec3& b) {
  Vec3 x = canonical_sign(a.normalized()), y = canonical_sign(b.normalized());
  if (std::lexicographical_compare(y.data(), y.data() + 3, x.data(), x.data() + 3)) std::swap(x, y);
  return {PairKind::Two, {x, y}};
}

std::array<Vec3, 2> plane_basis(const Vec3& n) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n[i]) < std::abs(n[k])) k = i;
  const Vec3 u = n.cross(Vec3::Unit(k)).normalized();
  return {u, n.cross(u)};
}

DirectionPair intersect_plane(const QuadraticForm3& form, const Vec3& plane_normal, double tol) {
  const double qn = form.norm();
  if (qn == 0.0) return DirectionPair::whole_plane();
  const auto [u, v] = plane_basis(plane_normal);
  const Mat3 q = form.matrix();
  const double a = u.dot(q * u), b = u.dot(q * v), c = v.dot(q * v);
  if (std::sqrt(a * a + 2.0 * b * b + c * c) <= tol * qn) return DirectionPair::whole_plane();

  // 2x2 eigen-split: lambda_hi along w_hi, lambda_lo along w_lo.
  const double mean = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  const double l_hi = mean + rad, l_lo = mean - rad;
  const double ang = 0.5 * std::atan2(2.0 * b, a - c);
  const Vec3 w_hi = std::cos(ang) * u + std::sin(ang) * v;
  const Vec3 w_lo = -std::sin(ang) * u + std::cos(ang) * v;

  const double scale = std::max(std::abs(l_hi), std::abs(l_lo));
  const bool hi_zero = std::abs(l_hi) <= tol * scale;
  const bool lo_zero = std::abs(l_lo) <= tol * scale;
  if (hi_zero) return DirectionPair::one(w_hi);
  if (lo_zero) return DirectionPair::one(w_lo);
  // discriminant b^2 - ac = -l_hi * l_lo
  if (l_hi > 0.0 && l_lo > 0.0) return DirectionPair::empty();
  if (l_hi < 0.0 && l_lo < 0.0) return DirectionPair::empty();
  // l_hi cos^2 t + l_lo sin^2 t = 0
  const double t = std::atan(std::sqrt(-l_hi / l_lo));
  return DirectionPair::two(std::cos(t) * w_hi + std::sin(t) * w_lo,
                            std::cos(t) * w_hi - std::sin(t) * w_lo);
}

namespace {

Vec3 fibonacci_point(int i, int n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * i + 1.0) / n;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * i;
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

// Pulls a unit vector onto {|x| = 1, q(x) = 0} by constrained Newton steps.
Vec3 project_to_cone(const Mat3& q, Vec3 x) {
  for (int it = 0; it < 30; ++it) {
    const double val = x.dot(q * x);
    Vec3 g = 2.0 * (q * x);
    g -= g.dot(x) * x;
    const double gn = g.squaredNorm();
    if (gn < 1e-300) break;
    const Vec3 step = val / gn * g;
    x = (x - step).normalized();
    if (step.norm() < 1e-15) break;
  }
  return x;
}

double signless_distance(const Vec3& x, const Vec3& y) {
  return std::min((x - y).norm(), (x + y).norm());
}

} // namespace

std::vector<Vec3> unit_cone_samples(const QuadraticForm3& form, int planes, double tol) {
  std::vector<Vec3> out;
  if (form.norm() == 0.0) {
    for (int i = 0; i < planes; ++i) out.push_back(fibonacci_point(i, planes));
    return out;
  }
  const EigenData eig = eigendecompose(form);
  const ConeClassification cls = classify(eig, tol);
  if (cls.kind == ConeClass::PointOnly) return out;
  const double scale = std::max({std::abs(eig.values[0]), std::abs(eig.values[1]), std::abs(eig.values[2])});
  for (int k = 0; k < 3; ++k)
    if (std::abs(eig.values[static_cast<std::size_t>(k)]) <= tol * scale) out.push_back(eig.vector(k));

  for (int i = 0; i < planes; ++i) {
    const Vec3 n = fibonacci_point(i, planes);
    const DirectionPair p = intersect_plane(form, n, tol);
    if (p.kind == PairKind::WholePlane) {
      const auto [u, v] = plane_basis(n);
      for (int k = 0; k < 8; ++k) {
        const double t = std::numbers::pi * k / 8.0;
        out.push_back(std::cos(t) * u + std::sin(t) * v);
      }
    } else {
      for (int k = 0; k < p.count(); ++k) out.push_back(p.dirs[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

bool ConeDistance::infinite() const { return std::isinf(value); }

ConeDistance cone_distance(const QuadraticForm3& a, const QuadraticForm3& b, int samples) {
  if (samples < 100) throw PreconditionError("cone_distance needs at least 100 sample planes");
  ConeDistance out;
  out.resolution = std::numbers::pi / std::sqrt(static_cast<double>(samples));
  const auto sa = unit_cone_samples(a, samples);
  const auto sb = unit_cone_samples(b, samples);
  if (sa.empty() || sb.empty()) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }

  struct Cand {
    double d;
    std::size_t i, j;
  };
  constexpr std::size_t kKeep = 8;
  std::vector<Cand> best;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    for (std::size_t j = 0; j < sb.size(); ++j) {
      const double d = signless_distance(sa[i], sb[j]);
      if (best.size() < kKeep || d < best.back().d) {
        Cand c{d, i, j};
        auto pos = std::upper_bound(best.begin(), best.end(), c,
                                    [](const Cand& l, const Cand& r) { return l.d < r.d; });
        best.insert(pos, c);
        if (best.size() > kKeep) best.pop_back();
      }
    }
  }
  out.value = best.front().d;

  const bool a_zero = a.norm() == 0.0, b_zero = b.norm() == 0.0;
  if (a_zero || b_zero) {
    out.value = 0.0;  // the whole sphere meets any non-empty unit cone
    return out;
  }
  const Mat3 qa = a.matrix() / a.norm(), qb = b.matrix() / b.norm();
  for (const Cand& c : best) {
    Vec3 x = sa[c.i], y = sb[c.j];
    if ((x - y).norm() > (x + y).norm()) y = -y;
    for (int it = 0; it < 200; ++it) {
      const Vec3 nx = project_to_cone(qa, y);
      const Vec3 ny = project_to_cone(qb, nx);
      const bool settled = (nx - x).norm() < 1e-14 && (ny - y).norm() < 1e-14;
      x = nx;
      y = ny;
      if (settled) break;
    }
    // Keep the polished pair only if both ends really are isotropic.
    if (std::abs(x.dot(qa * x)) <= 1e-10 && std::abs(y.dot(qb * y)) <= 1e-10)
      out.value = std::min(out.value, signless_distance(x, y));
  }
  return out;
}

bool epsilon_membership(const QuadraticForm3& form, const Vec3& x, double eps) {
  if (std::abs(x.norm() - 1.0) > 1e-9) throw PreconditionError("epsilon_membership needs a unit vector");
  if (eps < 0.0) throw PreconditionError("epsilon must be >= 0");
  return std::abs(form(x)) <= eps;
}

double line_angle(const Vec3& a, const Vec3& b) {
  const double c = std::abs(a.normalized().dot(b.normalized()));
  const double s = a.normalized().cross(b.normalized()).norm();
  return std::atan2(s, c);
}

double direction_error(const DirectionPair& ref, const DirectionPair& est) {
  if (ref.kind != PairKind::Two || est.kind != PairKind::Two)
    throw ArityError("direction_error needs two directions in each pair");
  const double straight = 0.5 * (line_angle(ref.dirs[0], est.dirs[0]) + line_angle(ref.dirs[1], est.dirs[1]));
  const double crossed = 0.5 * (line_angle(ref.dirs[0], est.dirs[1]) + line_angle(ref.dirs[1], est.dirs[0]));
  return std::min(straight, crossed);
}

nlohmann::ordered_json eigen_json(int vertex, const EigenData& eig, const ConeClassification& cls) {
  nlohmann::ordered_json j;
  j["vertex"] = vertex;
  j["lambda"] = eig.values;
  std::vector<double> axes;
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 3; ++c) axes.push_back(eig.vectors(c, k));
  j["axes"] = axes;
  j["class"] = std::string(to_string(cls.kind));
  j["inertia"] = {cls.inertia.positive, cls.inertia.negative, cls.inertia.zero};
  return j;
}

} // namespace asymcone
