#include "asymcone/measure.hpp"

#include "asymcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace asymcone {

QuadraticForm3 QuadraticForm3::from_matrix(const Mat3& m) {
  return QuadraticForm3({m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)});
}

QuadraticForm3 QuadraticForm3::outer(const Vec3& u, double s) {
  return QuadraticForm3({s * u.x() * u.x(), s * u.x() * u.y(), s * u.x() * u.z(),
                         s * u.y() * u.y(), s * u.y() * u.z(), s * u.z() * u.z()});
}

Mat3 QuadraticForm3::matrix() const {
  Mat3 m;
  m << c_[0], c_[1], c_[2], c_[1], c_[3], c_[4], c_[2], c_[4], c_[5];
  return m;
}

double QuadraticForm3::operator()(const Vec3& x) const {
  return c_[0] * x.x() * x.x() + c_[3] * x.y() * x.y() + c_[5] * x.z() * x.z() +
         2.0 * (c_[1] * x.x() * x.y() + c_[2] * x.x() * x.z() + c_[4] * x.y() * x.z());
}

double QuadraticForm3::norm() const {
  return std::sqrt(c_[0] * c_[0] + c_[3] * c_[3] + c_[5] * c_[5] +
                   2.0 * (c_[1] * c_[1] + c_[2] * c_[2] + c_[4] * c_[4]));
}

bool QuadraticForm3::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

QuadraticForm3& QuadraticForm3::operator+=(const QuadraticForm3& o) {
  for (std::size_t i = 0; i < 6; ++i) c_[i] += o.c_[i];
  return *this;
}

QuadraticForm3& QuadraticForm3::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

double evaluate(const QuadraticForm3& form, const Vec3& x) { return form(x); }

double clip_length(const Vec3& a, const Vec3& b, const BorelBall& ball) {
  const Vec3 d = b - a;
  const Vec3 w = a - ball.center;
  const double qa = d.squaredNorm();
  if (qa == 0.0) return 0.0;
  const double qb = d.dot(w);  // half of the linear coefficient
  const double qc = w.squaredNorm() - ball.radius * ball.radius;
  const double disc = qb * qb - qa * qc;
  if (disc <= 0.0) return 0.0;
  const double sq = std::sqrt(disc);
  // Numerically stable roots of qa t^2 + 2 qb t + qc = 0.
  const double q = -(qb + std::copysign(sq, qb));
  double t0 = q / qa;
  double t1 = q != 0.0 ? qc / q : -t0;
  if (t0 > t1) std::swap(t0, t1);
  const double lo = std::max(t0, 0.0);
  const double hi = std::min(t1, 1.0);
  return hi > lo ? (hi - lo) * std::sqrt(qa) : 0.0;
}

EdgeCoefficients edge_coefficients(double angle) {
  if (angle == 0.0) return {};
  const double s = std::sin(angle);
  return {0.5 * (angle - s), 0.5 * (angle + s)};
}

QuadraticForm3 edge_form(const EdgeRecord& edge) {
  const EdgeCoefficients c = edge_coefficients(edge.angle);
  return QuadraticForm3::outer(edge.plus, c.plus) + QuadraticForm3::outer(edge.minus, c.minus);
}

double wedge_oracle(double angle, const Vec3& x, int samples) {
  if (!(std::abs(angle) < std::numbers::pi))
    throw DomainError("wedge angle must lie in (-pi, pi)");
  if (samples < 64) throw DomainError("wedge oracle needs at least 64 samples");
  if (angle == 0.0) return 0.0;

  const double a = x.x(), b = x.y();
  auto midpoint = [&](int n) {
    const double h = angle / n;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double phi = -0.5 * angle + (k + 0.5) * h;
      const double t = -a * std::sin(phi) + b * std::cos(phi);
      sum += t * t;
    }
    return sum * h;
  };
  const double fine = midpoint(samples);
  const double coarse = midpoint(samples / 2);
  return (4.0 * fine - coarse) / 3.0;
}

std::string_view to_string(MeasureMode mode) {
  return mode == MeasureMode::Exact ? "exact" : "approx";
}

namespace {

void accumulate(QuadraticForm3& q, const EdgeRecord& e, double len, MeasureMode mode) {
  if (len <= 0.0 || e.angle == 0.0) return;
  if (mode == MeasureMode::Exact) {
    const EdgeCoefficients c = edge_coefficients(e.angle);
    q += QuadraticForm3::outer(e.plus, len * c.plus);
    q += QuadraticForm3::outer(e.minus, len * c.minus);
  } else {
    q += QuadraticForm3::outer(e.minus, len * e.angle);
  }
}

} // namespace

QuadraticForm3 assemble_form(std::span<const EdgeRecord> edges, const BorelBall& ball,
                             MeasureMode mode) {
  QuadraticForm3 q;
  for (const EdgeRecord& e : edges) {
    if (e.angle == 0.0) continue;
    accumulate(q, e, clip_length(e.p0, e.p1, ball), mode);
  }
  return q;
}

QuadraticForm3 assemble_form(std::span<const EdgeRecord> edges, std::span<const BorelBall> balls,
                             MeasureMode mode) {
  QuadraticForm3 q;
  for (const BorelBall& b : balls) q += assemble_form(edges, b, mode);
  return q;
}

std::vector<EdgeContribution> edge_contributions(std::span<const EdgeRecord> edges,
                                                 const BorelBall& ball) {
  std::vector<EdgeContribution> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeRecord& e = edges[i];
    const double len = clip_length(e.p0, e.p1, ball);
    if (len > 0.0 && e.angle != 0.0)
      out.push_back({static_cast<int>(i), len, edge_coefficients(e.angle)});
  }
  return out;
}

FormAssembler::FormAssembler(std::vector<EdgeRecord> edges, double cell_size)
    : edges_(std::move(edges)) {
  if (edges_.empty()) {
    buckets_.resize(1);
    return;
  }
  Vec3 lo = edges_.front().p0, hi = lo;
  double mean_len = 0.0;
  for (const EdgeRecord& e : edges_) {
    lo = lo.cwiseMin(e.p0).cwiseMin(e.p1);
    hi = hi.cwiseMax(e.p0).cwiseMax(e.p1);
    mean_len += e.length;
  }
  mean_len /= static_cast<double>(edges_.size());
  cell_ = cell_size > 0.0 ? cell_size : 2.0 * mean_len;
  // Keep the grid bounded for degenerate or very spread-out inputs.
  const Vec3 ext = hi - lo;
  const double max_cells_per_axis = 256.0;
  cell_ = std::max({cell_, ext.x() / max_cells_per_axis, ext.y() / max_cells_per_axis,
                    ext.z() / max_cells_per_axis, 1e-12});
  origin_ = lo;
  for (;;) {
    for (int k = 0; k < 3; ++k) dims_[static_cast<std::size_t>(k)] = static_cast<int>(ext[k] / cell_) + 1;
    if (static_cast<double>(dims_[0]) * dims_[1] * dims_[2] <= 2.0e6) break;
    cell_ *= 1.25;
  }
  buckets_.resize(static_cast<std::size_t>(dims_[0]) * static_cast<std::size_t>(dims_[1]) *
                  static_cast<std::size_t>(dims_[2]));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const EdgeRecord& e = edges_[i];
    if (e.angle == 0.0) continue;
    const auto c0 = cell_of(e.p0.cwiseMin(e.p1));
    const auto c1 = cell_of(e.p0.cwiseMax(e.p1));
    for (int x = c0[0]; x <= c1[0]; ++x)
      for (int y = c0[1]; y <= c1[1]; ++y)
        for (int z = c0[2]; z <= c1[2]; ++z)
          buckets_[(static_cast<std::size_t>(z) * static_cast<std::size_t>(dims_[1]) +
                    static_cast<std::size_t>(y)) * static_cast<std::size_t>(dims_[0]) +
                   static_cast<std::size_t>(x)]
              .push_back(static_cast<int>(i));
  }
}

std::array<int, 3> FormAssembler::cell_of(const Vec3& p) const {
  std::array<int, 3> c{};
  for (int k = 0; k < 3; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double v = std::floor((p[k] - origin_[k]) / cell_);
    c[kk] = static_cast<int>(std::clamp(v, 0.0, static_cast<double>(dims_[kk] - 1)));
  }
  return c;
}

QuadraticForm3 FormAssembler::assemble(const BorelBall& ball, MeasureMode mode) const {
  QuadraticForm3 q;
  if (edges_.empty()) return q;
  const Vec3 r = Vec3::Constant(ball.radius);
  const auto c0 = cell_of(ball.center - r);
  const auto c1 = cell_of(ball.center + r);
  std::vector<int> cand;
  for (int x = c0[0]; x <= c1[0]; ++x)
    for (int y = c0[1]; y <= c1[1]; ++y)
      for (int z = c0[2]; z <= c1[2]; ++z) {
        const auto& b = buckets_[(static_cast<std::size_t>(z) * static_cast<std::size_t>(dims_[1]) +
                                  static_cast<std::size_t>(y)) * static_cast<std::size_t>(dims_[0]) +
                                 static_cast<std::size_t>(x)];
        cand.insert(cand.end(), b.begin(), b.end());
      }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (int i : cand) {
    const EdgeRecord& e = edges_[static_cast<std::size_t>(i)];
    accumulate(q, e, clip_length(e.p0, e.p1, ball), mode);
  }
  return q;
}

nlohmann::ordered_json form_json(const QuadraticForm3& form, const BorelBall& ball, MeasureMode mode) {
  nlohmann::ordered_json j;
  j["center"] = {ball.center.x(), ball.center.y(), ball.center.z()};
  j["radius"] = ball.radius;
  j["mode"] = std::string(to_string(mode));
  j["Q"] = form.coeffs();
  return j;
}

} // namespace asymcone
