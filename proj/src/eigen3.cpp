#include "asymcone/cone.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace asymcone {

namespace {

// Unit vector orthogonal to the rows of the (near) rank-2 matrix m.
Vec3 null_vector(const Mat3& m) {
  const Vec3 r0 = m.row(0), r1 = m.row(1), r2 = m.row(2);
  const Vec3 c[3] = {r0.cross(r1), r0.cross(r2), r1.cross(r2)};
  int best = 0;
  double bn = c[0].squaredNorm();
  for (int k = 1; k < 3; ++k) {
    const double n = c[k].squaredNorm();
    if (n > bn) {
      bn = n;
      best = k;
    }
  }
  return c[best] / std::sqrt(bn);
}

// Any unit vector orthogonal to w.
Vec3 any_orthogonal(const Vec3& w) {
  if (std::abs(w.x()) > std::abs(w.y()))
    return Vec3(-w.z(), 0.0, w.x()).normalized();
  return Vec3(0.0, w.z(), -w.y()).normalized();
}

void finalize(const Mat3& a, std::array<double, 3> vals, Mat3 vecs, EigenData& out) {
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(j)]; });
  double residual = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = vals[static_cast<std::size_t>(src)];
    out.vectors.col(k) = canonical_sign(vecs.col(src));
    residual = std::max(residual, (a * out.vectors.col(k) - out.values[static_cast<std::size_t>(k)] *
                                                               out.vectors.col(k)).norm());
  }
  out.residual = residual;
}

bool acceptable(const EigenData& e, const Mat3& a) {
  const double scale = std::max(a.norm(), 1e-300);
  const Mat3 gram = e.vectors.transpose() * e.vectors;
  return e.residual <= 1e-11 * scale && (gram - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-13;
}

} // namespace

EigenData eigendecompose_jacobi(const QuadraticForm3& form) {
  const Mat3 a0 = form.matrix();
  Mat3 a = a0;
  Mat3 v = Mat3::Identity();
  const double scale = a.norm();
  for (int sweep = 0; sweep < 64 && scale > 0.0; ++sweep) {
    const double off = std::sqrt(a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2));
    if (off <= 1e-18 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Mat3 j = Mat3::Identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        a = j.transpose() * a * j;
        a(p, q) = a(q, p) = 0.0;
        v = v * j;
      }
    }
  }
  EigenData out;
  finalize(a0, {a(0, 0), a(1, 1), a(2, 2)}, v, out);
  return out;
}

EigenData eigendecompose(const QuadraticForm3& form) {
  const Mat3 a = form.matrix();
  EigenData out;
  const double max_abs = a.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) {
    finalize(a, {0.0, 0.0, 0.0}, Mat3::Identity(), out);
    return out;
  }

  // Shift by the mean eigenvalue and scale to unit entries.
  const double shift = a.trace() / 3.0;
  Mat3 b = (a - shift * Mat3::Identity()) / max_abs;
  const double p1 = b(0, 1) * b(0, 1) + b(0, 2) * b(0, 2) + b(1, 2) * b(1, 2);
  const double p2 = b(0, 0) * b(0, 0) + b(1, 1) * b(1, 1) + b(2, 2) * b(2, 2) + 2.0 * p1;
  if (p2 == 0.0) {
    finalize(a, {shift, shift, shift}, Mat3::Identity(), out);
    return out;
  }
  const double p = std::sqrt(p2 / 6.0);
  const double r = std::clamp((b / p).determinant() / 2.0, -1.0, 1.0);
  // r = +-1 is the zero discriminant of the characteristic cubic: a double root.
  if (1.0 - std::abs(r) <= 1e-12) return eigendecompose_jacobi(form);

  const double phi = std::acos(r) / 3.0;
  const double l1 = 2.0 * p * std::cos(phi);
  const double l3 = 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double l2 = -l1 - l3;  // trace of b is zero

  // Solve first for the eigenvalue farthest from the other two, then the
  // remaining 2x2 block in its orthogonal complement.
  const bool top_isolated = (l1 - l2) >= (l2 - l3);
  const double lone = top_isolated ? l1 : l3;
  const Vec3 w = null_vector(b - lone * Mat3::Identity());
  const Vec3 u = any_orthogonal(w);
  const Vec3 v = w.cross(u);
  const double m00 = u.dot(b * u), m01 = u.dot(b * v), m11 = v.dot(b * v);
  const double ang = 0.5 * std::atan2(2.0 * m01, m00 - m11);
  const Vec3 e_hi = std::cos(ang) * u + std::sin(ang) * v;
  const Vec3 e_lo = -std::sin(ang) * u + std::cos(ang) * v;
  const double mean = 0.5 * (m00 + m11);
  const double rad = std::hypot(0.5 * (m00 - m11), m01);

  Mat3 vecs;
  vecs.col(0) = w;
  vecs.col(1) = e_hi;
  vecs.col(2) = e_lo;
  const std::array<double, 3> vals{shift + max_abs * lone, shift + max_abs * (mean + rad),
                                   shift + max_abs * (mean - rad)};
  finalize(a, vals, vecs, out);
  if (!acceptable(out, a)) return eigendecompose_jacobi(form);
  return out;
}

Vec3 canonical_sign(const Vec3& d) {
  for (int k = 0; k < 3; ++k) {
    if (std::abs(d[k]) > 1e-14) return d[k] < 0.0 ? Vec3(-d) : d;
  }
  return d;
}

} // namespace asymcone
