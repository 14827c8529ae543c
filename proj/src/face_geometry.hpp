#pragma once

#include "asymcone/mesh.hpp"

#include <Eigen/Geometry>

namespace asymcone::detail {

/// Barycentric coordinates of the projection of x onto the plane of (a, b, c).
inline Vec3 barycentric(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& x) {
  const Vec3 v0 = b - a, v1 = c - a, v2 = x - a;
  const double d00 = v0.dot(v0), d01 = v0.dot(v1), d11 = v1.dot(v1);
  const double d20 = v2.dot(v0), d21 = v2.dot(v1);
  const double den = d00 * d11 - d01 * d01;
  const double l1 = (d11 * d20 - d01 * d21) / den;
  const double l2 = (d00 * d21 - d01 * d20) / den;
  return Vec3(1.0 - l1 - l2, l1, l2);
}

// Rotation about the shared edge taking the plane with normal `from` onto `to`.
inline Vec3 unfold(const Vec3& d, const Vec3& axis, const Vec3& from, const Vec3& to) {
  return d.dot(axis) * axis + d.dot(from.cross(axis)) * to.cross(axis);
}

} // namespace asymcone::detail
