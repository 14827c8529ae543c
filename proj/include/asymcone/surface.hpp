#pragma once

#include "asymcone/cone.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace asymcone {

/// Position and partial derivatives of a chart at one parameter point.
struct SurfaceJet {
  Vec3 p = Vec3::Zero();
  Vec3 pu = Vec3::Zero();
  Vec3 pv = Vec3::Zero();
  Vec3 puu = Vec3::Zero();
  Vec3 puv = Vec3::Zero();
  Vec3 pvv = Vec3::Zero();
};

struct ChartDomain {
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;
};

/// Analytic surface patch. The unit normal is normalize(pu x pv); built-in
/// closed references (sphere, cylinder) are parametrized so that this is the
/// outward normal.
class ParametricSurface {
public:
  using JetFn = std::function<SurfaceJet(double u, double v)>;

  ParametricSurface(std::string name, ChartDomain domain, JetFn jet, bool periodic_u = false,
                    bool pole_v0 = false, bool pole_v1 = false);

  const std::string& name() const { return name_; }
  const ChartDomain& domain() const { return domain_; }
  bool periodic_u() const { return periodic_u_; }
  /// Rows v = v0 / v = v1 collapse to a single point (sphere poles).
  bool pole_v0() const { return pole_v0_; }
  bool pole_v1() const { return pole_v1_; }

  /// Throws DomainError outside the closed chart (u wraps when periodic).
  SurfaceJet jet(double u, double v) const;
  Vec3 position(double u, double v) const { return jet(u, v).p; }
  Vec3 normal(double u, double v) const;
  /// Closest surface parameter to `x`, by Gauss-Newton from `start`.
  Vec2 project(const Vec3& x, const Vec2& start) const;
  bool contains(double u, double v) const;

private:
  std::string name_;
  ChartDomain domain_;
  JetFn jet_;
  bool periodic_u_;
  bool pole_v0_;
  bool pole_v1_;
};

/// Second fundamental form in the (pu, pv) basis, signed so that convex
/// surfaces are positive with respect to the chart normal:
/// e = -puu.n, f = -puv.n, g = -pvv.n.
struct SecondFundamentalForm {
  double e = 0.0, f = 0.0, g = 0.0;
  double E = 0.0, F = 0.0, G = 0.0;  // first fundamental form
  std::array<double, 2> principal{};  // k1 >= k2
  std::array<Vec3, 2> principal_dirs{Vec3::Zero(), Vec3::Zero()};  // unit, in 3-space
  Vec3 normal = Vec3::Zero();
  double gauss = 0.0;
  double mean = 0.0;  // (k1 + k2) / 2

  /// h(pr_T x, pr_T x) as a quadratic form on R^3.
  QuadraticForm3 ambient() const;
  Vec3 pu = Vec3::Zero(), pv = Vec3::Zero();
};

SecondFundamentalForm second_form(const ParametricSurface& surface, const Vec2& uv);

/// Tangent directions d with h(d, d) = 0, in 3-space.
DirectionPair asymptotic_directions(const ParametricSurface& surface, const Vec2& uv,
                                    double tol = kDefaultZeroTol);

// Built-in surfaces.
ParametricSurface make_plane(double extent = 1.0);
/// Axis z, u the angle, v the height in [0, height].
ParametricSurface make_cylinder(double radius = 1.0, double height = 1.0);
/// (cosh v cos u, cosh v sin u, v) for v in [vmin, vmax]; conformal chart.
ParametricSurface make_catenoid(double vmin = -1.0, double vmax = 1.0);
/// (u - u^3/3 + u v^2, v - v^3/3 + v u^2, u^2 - v^2) on [-extent, extent]^2.
ParametricSurface make_enneper(double extent = 1.0);
/// Longitude u, latitude v in [-pi/2, pi/2].
ParametricSurface make_sphere(double radius = 1.0);

/// Heights of a 5x5 bicubic control net drawn uniformly in [-amplitude, amplitude].
struct BSplineNet {
  std::array<std::array<double, 5>, 5> heights{};
};
inline constexpr std::uint64_t kDefaultBSplineSeed = 20240601;
inline constexpr double kDefaultBSplineAmplitude = 0.3;
BSplineNet bspline_net(std::uint64_t seed = kDefaultBSplineSeed,
                       double amplitude = kDefaultBSplineAmplitude);
/// Graph (u, v, f(u, v)) over [0, 1]^2 of the clamped uniform bicubic
/// tensor-product B-spline with the given control heights.
ParametricSurface make_bspline_graph(const BSplineNet& net);

/// Values and first two derivatives of the five clamped cubic B-spline basis
/// functions on knots {0,0,0,0,1/2,1,1,1,1} at t in [0, 1].
struct BasisJet {
  std::array<double, 5> n{}, d1{}, d2{};
};
BasisJet cubic_basis(double t);

} // namespace asymcone
