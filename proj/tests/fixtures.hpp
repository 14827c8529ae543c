#pragma once

#include "asymcone/field.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <random>

namespace fixtures {

using asymcone::Face;
using asymcone::TriangleMesh;
using asymcone::Vec3;

/// Unit cube [0,1]^3 split into 12 outward triangles.
inline TriangleMesh unit_cube() {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) v.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  const std::vector<Face> f{{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                            {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  return TriangleMesh(v, f);
}

/// Two triangles hinged on the x axis: the first in the plane z = 0, the
/// second folded down by `angle` (a convex edge for angle > 0).
inline TriangleMesh hinge(double angle) {
  const std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0.5, 1, 0}, {0.5, -std::cos(angle), -std::sin(angle)}};
  return TriangleMesh(v, {{0, 1, 2}, {1, 0, 3}});
}

/// Rotation about a random axis plus a translation.
struct RigidMotion {
  asymcone::Mat3 r;
  Vec3 t;
  Vec3 operator()(const Vec3& p) const { return r * p + t; }
};

inline RigidMotion random_motion(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  return {q.normalized().toRotationMatrix(), Vec3(g(rng), g(rng), g(rng))};
}

inline TriangleMesh moved(const TriangleMesh& m, const RigidMotion& rm) {
  std::vector<Vec3> v;
  for (const Vec3& p : m.vertices()) v.push_back(rm(p));
  return m.with_vertices(std::move(v));
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 x(g(rng), g(rng), g(rng));
  return x.normalized();
}

inline asymcone::QuadraticForm3 random_form(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return asymcone::QuadraticForm3({u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)});
}

inline double rel_diff(const asymcone::QuadraticForm3& a, const asymcone::QuadraticForm3& b) {
  return (a + (-b)).norm() / std::max(a.norm(), 1e-300);
}

} // namespace fixtures
