#include "asymcone/surface.hpp"

#include "asymcone/errors.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <random>

namespace asymcone {

ParametricSurface::ParametricSurface(std::string name, ChartDomain domain, JetFn jet, bool periodic_u,
                                     bool pole_v0, bool pole_v1)
    : name_(std::move(name)), domain_(domain), jet_(std::move(jet)), periodic_u_(periodic_u),
      pole_v0_(pole_v0), pole_v1_(pole_v1) {}

bool ParametricSurface::contains(double u, double v) const {
  constexpr double slack = 1e-12;
  const double su = slack * std::max(1.0, domain_.u1 - domain_.u0);
  const double sv = slack * std::max(1.0, domain_.v1 - domain_.v0);
  if (!std::isfinite(u) || !std::isfinite(v)) return false;
  if (v < domain_.v0 - sv || v > domain_.v1 + sv) return false;
  return periodic_u_ || (u >= domain_.u0 - su && u <= domain_.u1 + su);
}

SurfaceJet ParametricSurface::jet(double u, double v) const {
  if (!contains(u, v))
    throw DomainError("chart point (" + std::to_string(u) + ", " + std::to_string(v) +
                      ") lies outside the domain of surface '" + name_ + "'");
  return jet_(u, v);
}

Vec3 ParametricSurface::normal(double u, double v) const {
  const SurfaceJet j = jet(u, v);
  Vec3 n = j.pu.cross(j.pv);
  const double scale = j.pu.norm() * j.pv.norm();
  if (n.norm() <= 1e-12 * scale || scale == 0.0) {
    // Collapsed chart row (pole): step inside the chart.
    const double h = 1e-7 * (domain_.v1 - domain_.v0);
    const double vi = v - domain_.v0 < domain_.v1 - v ? v + h : v - h;
    const SurfaceJet k = jet_(u, vi);
    n = k.pu.cross(k.pv);
  }
  return n.normalized();
}

Vec2 ParametricSurface::project(const Vec3& x, const Vec2& start) const {
  Vec2 uv = start;
  for (int it = 0; it < 50; ++it) {
    const SurfaceJet j = jet(uv.x(), uv.y());
    Eigen::Matrix<double, 3, 2> jac;
    jac.col(0) = j.pu;
    jac.col(1) = j.pv;
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    if (std::abs(jtj.determinant()) < 1e-24) break;
    const Vec2 step = jtj.ldlt().solve(jac.transpose() * (x - j.p));
    uv += step;
    if (!periodic_u_) uv.x() = std::clamp(uv.x(), domain_.u0, domain_.u1);
    uv.y() = std::clamp(uv.y(), domain_.v0, domain_.v1);
    if (step.norm() < 1e-15) break;
  }
  return uv;
}

QuadraticForm3 SecondFundamentalForm::ambient() const {
  Eigen::Matrix<double, 3, 2> jac;
  jac.col(0) = pu;
  jac.col(1) = pv;
  Eigen::Matrix2d first, second;
  first << E, F, F, G;
  second << e, f, f, g;
  const Eigen::Matrix2d inv = first.inverse();
  const Mat3 h = jac * inv * second * inv * jac.transpose();
  return QuadraticForm3::from_matrix(0.5 * (h + h.transpose()));
}

SecondFundamentalForm second_form(const ParametricSurface& surface, const Vec2& uv) {
  const SurfaceJet j = surface.jet(uv.x(), uv.y());
  SecondFundamentalForm s;
  const Vec3 cr = j.pu.cross(j.pv);
  if (cr.norm() <= 1e-12 * j.pu.norm() * j.pv.norm() || cr.norm() == 0.0)
    throw DomainError("degenerate chart point on surface '" + surface.name() + "'");
  s.normal = cr.normalized();
  s.pu = j.pu;
  s.pv = j.pv;
  s.E = j.pu.dot(j.pu);
  s.F = j.pu.dot(j.pv);
  s.G = j.pv.dot(j.pv);
  s.e = -j.puu.dot(s.normal);
  s.f = -j.puv.dot(s.normal);
  s.g = -j.pvv.dot(s.normal);

  const double det1 = s.E * s.G - s.F * s.F;
  s.gauss = (s.e * s.g - s.f * s.f) / det1;
  s.mean = (s.e * s.G - 2.0 * s.f * s.F + s.g * s.E) / (2.0 * det1);
  const double disc = std::sqrt(std::max(0.0, s.mean * s.mean - s.gauss));
  s.principal = {s.mean + disc, s.mean - disc};

  for (std::size_t k = 0; k < 2; ++k) {
    const double kk = s.principal[k];
    // (II - k I) a = 0, using the better conditioned row.
    const Vec2 r0(s.e - kk * s.E, s.f - kk * s.F), r1(s.f - kk * s.F, s.g - kk * s.G);
    const Vec2 row = r0.norm() >= r1.norm() ? r0 : r1;
    Vec3 d;
    if (row.norm() <= 1e-12 * (std::abs(s.e) + std::abs(s.f) + std::abs(s.g) + 1e-300)) {
      d = k == 0 ? j.pu : s.normal.cross(j.pu);  // umbilic: any orthonormal pair
    } else {
      d = -row.y() * j.pu + row.x() * j.pv;
    }
    s.principal_dirs[k] = d.normalized();
  }
  if (disc == 0.0) s.principal_dirs[1] = s.normal.cross(s.principal_dirs[0]);
  return s;
}

DirectionPair asymptotic_directions(const ParametricSurface& surface, const Vec2& uv, double tol) {
  const SecondFundamentalForm s = second_form(surface, uv);
  const double kmax = std::max(std::abs(s.principal[0]), std::abs(s.principal[1]));
  if (kmax <= 1e-12) return DirectionPair::whole_plane();
  const SurfaceJet j = surface.jet(uv.x(), uv.y());
  // e a^2 + 2 f a b + g b^2 = 0 in the chart basis.
  const double e = s.e, f = s.f, g = s.g;
  const double disc = f * f - e * g;
  const double scale = f * f + std::abs(e * g) + 1e-300;
  auto lift = [&](double a, double b) { return Vec3(a * j.pu + b * j.pv); };
  if (std::abs(disc) <= tol * scale || std::abs(s.principal[1]) <= tol * kmax ||
      std::abs(s.principal[0]) <= tol * kmax) {
    if (std::abs(e) >= std::abs(g)) return DirectionPair::one(lift(-f, e));
    return DirectionPair::one(lift(g, -f));
  }
  if (disc < 0.0) return DirectionPair::empty();
  const double sq = std::sqrt(disc);
  if (std::abs(g) > std::abs(e)) {
    return DirectionPair::two(lift(g, -f + sq), lift(g, -f - sq));
  }
  return DirectionPair::two(lift(-f + sq, e), lift(-f - sq, e));
}

ParametricSurface make_plane(double extent) {
  return ParametricSurface("plane", {-extent, extent, -extent, extent}, [](double u, double v) {
    SurfaceJet j;
    j.p = Vec3(u, v, 0.0);
    j.pu = Vec3::UnitX();
    j.pv = Vec3::UnitY();
    return j;
  });
}

ParametricSurface make_cylinder(double radius, double height) {
  return ParametricSurface(
      "cylinder", {0.0, 2.0 * std::numbers::pi, 0.0, height},
      [radius](double u, double v) {
        const double c = std::cos(u), s = std::sin(u);
        SurfaceJet j;
        j.p = Vec3(radius * c, radius * s, v);
        j.pu = Vec3(-radius * s, radius * c, 0.0);
        j.pv = Vec3::UnitZ();
        j.puu = Vec3(-radius * c, -radius * s, 0.0);
        return j;
      },
      true);
}

ParametricSurface make_catenoid(double vmin, double vmax) {
  return ParametricSurface(
      "catenoid", {0.0, 2.0 * std::numbers::pi, vmin, vmax},
      [](double u, double v) {
        const double c = std::cos(u), s = std::sin(u), ch = std::cosh(v), sh = std::sinh(v);
        SurfaceJet j;
        j.p = Vec3(ch * c, ch * s, v);
        j.pu = Vec3(-ch * s, ch * c, 0.0);
        j.pv = Vec3(sh * c, sh * s, 1.0);
        j.puu = Vec3(-ch * c, -ch * s, 0.0);
        j.puv = Vec3(-sh * s, sh * c, 0.0);
        j.pvv = Vec3(ch * c, ch * s, 0.0);
        return j;
      },
      true);
}

ParametricSurface make_enneper(double extent) {
  return ParametricSurface("enneper", {-extent, extent, -extent, extent}, [](double u, double v) {
    SurfaceJet j;
    j.p = Vec3(u - u * u * u / 3.0 + u * v * v, v - v * v * v / 3.0 + v * u * u, u * u - v * v);
    j.pu = Vec3(1.0 - u * u + v * v, 2.0 * u * v, 2.0 * u);
    j.pv = Vec3(2.0 * u * v, 1.0 - v * v + u * u, -2.0 * v);
    j.puu = Vec3(-2.0 * u, 2.0 * v, 2.0);
    j.puv = Vec3(2.0 * v, 2.0 * u, 0.0);
    j.pvv = Vec3(2.0 * u, -2.0 * v, -2.0);
    return j;
  });
}

ParametricSurface make_sphere(double radius) {
  const double h = 0.5 * std::numbers::pi;
  return ParametricSurface(
      "sphere", {0.0, 2.0 * std::numbers::pi, -h, h},
      [radius](double u, double v) {
        const double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
        SurfaceJet j;
        j.p = radius * Vec3(cv * cu, cv * su, sv);
        j.pu = radius * Vec3(-cv * su, cv * cu, 0.0);
        j.pv = radius * Vec3(-sv * cu, -sv * su, cv);
        j.puu = radius * Vec3(-cv * cu, -cv * su, 0.0);
        j.puv = radius * Vec3(sv * su, -sv * cu, 0.0);
        j.pvv = radius * Vec3(-cv * cu, -cv * su, -sv);
        return j;
      },
      true, true, true);
}

namespace {

constexpr std::array<double, 9> kKnots{0.0, 0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0, 1.0};

// Derivative `order` of N_{i,p} at t (Cox-de Boor; 0/0 := 0).
double basis(int i, int p, int order, double t) {
  const auto T = [](int k) { return kKnots[static_cast<std::size_t>(k)]; };
  if (order > p) return 0.0;
  if (p == 0) {
    const bool last_span = (t == 1.0 && T(i) < T(i + 1) && T(i + 1) == 1.0);
    return (order == 0 && ((T(i) <= t && t < T(i + 1)) || last_span)) ? 1.0 : 0.0;
  }
  const double d1 = T(i + p) - T(i);
  const double d2 = T(i + p + 1) - T(i + 1);
  if (order == 0) {
    double v = 0.0;
    if (d1 > 0.0) v += (t - T(i)) / d1 * basis(i, p - 1, 0, t);
    if (d2 > 0.0) v += (T(i + p + 1) - t) / d2 * basis(i + 1, p - 1, 0, t);
    return v;
  }
  double v = 0.0;
  if (d1 > 0.0) v += p / d1 * basis(i, p - 1, order - 1, t);
  if (d2 > 0.0) v -= p / d2 * basis(i + 1, p - 1, order - 1, t);
  return v;
}

} // namespace

BasisJet cubic_basis(double t) {
  if (t < 0.0 || t > 1.0) throw DomainError("B-spline parameter outside [0, 1]");
  BasisJet b;
  for (int i = 0; i < 5; ++i) {
    const auto k = static_cast<std::size_t>(i);
    b.n[k] = basis(i, 3, 0, t);
    b.d1[k] = basis(i, 3, 1, t);
    b.d2[k] = basis(i, 3, 2, t);
  }
  return b;
}

BSplineNet bspline_net(std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  BSplineNet net;
  for (auto& row : net.heights)
    for (double& h : row) h = amplitude * (2.0 * unit_uniform(rng()) - 1.0);
  return net;
}

ParametricSurface make_bspline_graph(const BSplineNet& net) {
  return ParametricSurface("bspline", {0.0, 1.0, 0.0, 1.0}, [net](double u, double v) {
    const BasisJet bu = cubic_basis(std::clamp(u, 0.0, 1.0));
    const BasisJet bv = cubic_basis(std::clamp(v, 0.0, 1.0));
    double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t k = 0; k < 5; ++k) {
        const double c = net.heights[i][k];
        f += c * bu.n[i] * bv.n[k];
        fu += c * bu.d1[i] * bv.n[k];
        fv += c * bu.n[i] * bv.d1[k];
        fuu += c * bu.d2[i] * bv.n[k];
        fuv += c * bu.d1[i] * bv.d1[k];
        fvv += c * bu.n[i] * bv.d2[k];
      }
    }
    SurfaceJet j;
    j.p = Vec3(u, v, f);
    j.pu = Vec3(1.0, 0.0, fu);
    j.pv = Vec3(0.0, 1.0, fv);
    j.puu = Vec3(0.0, 0.0, fuu);
    j.puv = Vec3(0.0, 0.0, fuv);
    j.pvv = Vec3(0.0, 0.0, fvv);
    return j;
  });
}

} // namespace asymcone
