#include "asymcone/smooth.hpp"

#include "asymcone/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace asymcone {

namespace {

// Integrand coefficients (xx, xy, xz, yy, yz, zz) times the area element,
// followed by the area element itself.
using Values = std::array<double, 7>;

struct Sample {
  Values w{};
  Vec3 p = Vec3::Zero();
};

Sample integrand(const ParametricSurface& s, double u, double v) {
  const SurfaceJet j = s.jet(u, v);
  Sample out;
  out.p = j.p;
  const double E = j.pu.dot(j.pu), F = j.pu.dot(j.pv), G = j.pv.dot(j.pv);
  const double det = E * G - F * F;
  if (det <= 0.0) return out;
  const double dens = std::sqrt(det);
  const Vec3 n = j.pu.cross(j.pv) / dens;
  const double e = -j.puu.dot(n), f = -j.puv.dot(n), g = -j.pvv.dot(n);
  // J I^-1 II I^-1 J^T with I^-1 = adj(I) / det
  Eigen::Matrix2d inv;
  inv << G / det, -F / det, -F / det, E / det;
  Eigen::Matrix2d second;
  second << e, f, f, g;
  const Eigen::Matrix2d core = inv * second * inv;
  Eigen::Matrix<double, 3, 2> jac;
  jac.col(0) = j.pu;
  jac.col(1) = j.pv;
  const Mat3 h = jac * core * jac.transpose();
  out.w = {h(0, 0) * dens, 0.5 * (h(0, 1) + h(1, 0)) * dens, 0.5 * (h(0, 2) + h(2, 0)) * dens,
           h(1, 1) * dens, 0.5 * (h(1, 2) + h(2, 1)) * dens, h(2, 2) * dens, dens};
  return out;
}

double form_norm(const Values& c) {
  return std::sqrt(c[0] * c[0] + c[3] * c[3] + c[5] * c[5] + 2.0 * (c[1] * c[1] + c[2] * c[2] + c[4] * c[4]));
}

// Fraction of the square [-1/2, 1/2]^2 where a + b s + c t <= 0.
double inside_fraction(double a, double b, double c) {
  std::vector<Vec2> poly{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
  std::vector<Vec2> out;
  auto phi = [&](const Vec2& q) { return a + b * q.x() + c * q.y(); };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    const double fp = phi(p), fq = phi(q);
    if (fp <= 0.0) out.push_back(p);
    if ((fp <= 0.0) != (fq <= 0.0)) out.push_back(p + fp / (fp - fq) * (q - p));
  }
  double area = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec2& p = out[i];
    const Vec2& q = out[(i + 1) % out.size()];
    area += p.x() * q.y() - q.x() * p.y();
  }
  return std::clamp(0.5 * std::abs(area), 0.0, 1.0);
}

class Integrator {
public:
  Integrator(const ParametricSurface& s, const BorelBall& b, const QuadratureOptions& o)
      : surf_(s), ball_(b), opts_(o) {
    const ChartDomain& d = s.domain();
    chart_area_ = (d.u1 - d.u0) * (d.v1 - d.v0);
    chart_half_perimeter_ = (d.u1 - d.u0) + (d.v1 - d.v0);
  }

  void run() {
    const ChartDomain& d = surf_.domain();
    const int n = 1 << opts_.base_level;
    const double du = (d.u1 - d.u0) / n, dv = (d.v1 - d.v0) / n;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) cell(d.u0 + i * du, d.v0 + k * dv, du, dv, 0);
    if (unreached_)
      throw QuadratureError("tolerance not reached at the subdivision depth cap", opts_.cell_budget);
  }

  SmoothMeasure result() const {
    SmoothMeasure m;
    m.form = QuadraticForm3({sum_[0], sum_[1], sum_[2], sum_[3], sum_[4], sum_[5]});
    m.area = sum_[6];
    m.cells = cells_;
    return m;
  }

private:
  const ParametricSurface& surf_;
  BorelBall ball_;
  QuadratureOptions opts_;
  double chart_area_ = 1.0, chart_half_perimeter_ = 1.0;
  Values sum_{};
  std::size_t cells_ = 0;
  bool unreached_ = false;

  void count(std::size_t n = 1) {
    cells_ += n;
    if (cells_ > opts_.cell_budget)
      throw QuadratureError("smooth measure quadrature exceeded its cell budget", opts_.cell_budget);
  }

  void add(const Values& v, double weight) {
    for (std::size_t k = 0; k < v.size(); ++k) sum_[k] += v[k] * weight;
  }

  double phi(const Vec3& p) const { return (p - ball_.center).squaredNorm() - ball_.radius * ball_.radius; }

  // Centroid rule on the cell and on its four quarters, combined by one
  // Richardson step.
  Values richardson(double u, double v, double du, double dv, const Sample& c) {
    count(4);
    Values fine{};
    for (int q = 0; q < 4; ++q) {
      const Sample k = integrand(surf_, u + (q % 2 + 0.5) * 0.5 * du, v + (q / 2 + 0.5) * 0.5 * dv);
      for (std::size_t i = 0; i < fine.size(); ++i) fine[i] += 0.25 * k.w[i];
    }
    Values out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - c.w[i]) / 3.0 * du * dv;
    return out;
  }

  void interior(double u, double v, double du, double dv, int depth, const Sample& c) {
    const Values coarse = richardson(u, v, du, dv, c);
    const double allowed = opts_.tol * du * dv / chart_area_;
    Values gap{};
    for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = coarse[i] - c.w[i] * du * dv;
    if (form_norm(gap) <= allowed) {
      add(coarse, 1.0);
      return;
    }
    const double h2 = 0.5 * du, k2 = 0.5 * dv;
    std::array<Sample, 4> kids;
    Values fine{};
    for (int q = 0; q < 4; ++q) {
      const double uq = u + (q % 2) * h2, vq = v + (q / 2) * k2;
      kids[static_cast<std::size_t>(q)] = integrand(surf_, uq + 0.5 * h2, vq + 0.5 * k2);
      const Values r = richardson(uq, vq, h2, k2, kids[static_cast<std::size_t>(q)]);
      for (std::size_t i = 0; i < fine.size(); ++i) fine[i] += r[i];
    }
    Values diff{};
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fine[i] - coarse[i];
    if (form_norm(diff) <= allowed || depth + 1 >= opts_.max_depth) {
      add(fine, 1.0);
      return;
    }
    for (int q = 0; q < 4; ++q)
      interior(u + (q % 2) * h2, v + (q / 2) * k2, h2, k2, depth + 1, kids[static_cast<std::size_t>(q)]);
  }

  void cell(double u, double v, double du, double dv, int depth) {
    count();
    const Sample c = integrand(surf_, u + 0.5 * du, v + 0.5 * dv);
    std::array<Vec3, 9> ring;
    double rho = 0.0;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b) {
        const Vec3 p = (a == 1 && b == 1) ? c.p : surf_.position(u + 0.5 * a * du, v + 0.5 * b * dv);
        ring[static_cast<std::size_t>(3 * b + a)] = p;
        rho = std::max(rho, (p - c.p).norm());
      }
    rho *= 1.5;
    const double dc = (c.p - ball_.center).norm();
    if (dc - rho > ball_.radius) return;
    if (dc + rho <= ball_.radius) {
      interior(u, v, du, dv, depth, c);
      return;
    }
    // Straddling cell: the ball boundary is replaced by the zero line of a
    // linear fit of |p - center|^2 - r^2 across the cell.
    const double err = form_norm(c.w) * du * dv * std::min(1.0, rho / ball_.radius);
    const double allowed = opts_.tol * (du + dv) / chart_half_perimeter_;
    if (err > allowed) {
      if (depth + 1 < opts_.max_depth) {
        const double h2 = 0.5 * du, k2 = 0.5 * dv;
        for (int q = 0; q < 4; ++q) cell(u + (q % 2) * h2, v + (q / 2) * k2, h2, k2, depth + 1);
        return;
      }
      unreached_ = true;
    }
    const double frac = inside_fraction(phi(c.p), phi(ring[5]) - phi(ring[3]), phi(ring[7]) - phi(ring[1]));
    add(c.w, frac * du * dv);
  }
};

} // namespace

SmoothMeasure smooth_measure(const ParametricSurface& surface, const BorelBall& ball,
                             const QuadratureOptions& opts) {
  if (!(opts.tol > 0.0)) throw PreconditionError("quadrature tolerance must be > 0");
  if (!(ball.radius > 0.0)) throw PreconditionError("ball radius must be > 0");
  Integrator integ(surface, ball, opts);
  integ.run();
  return integ.result();
}

QuadraticForm3 smooth_form(const ParametricSurface& surface, const BorelBall& ball, double tol) {
  QuadratureOptions o;
  o.tol = tol;
  return smooth_measure(surface, ball, o).form;
}

DeviationStats angular_deviation(const TriangleMesh& mesh, const ParametricSurface& surface) {
  if (!mesh.has_chart_tags()) throw TagError("angular deviation needs per-vertex chart tags");
  constexpr double rad2deg = 180.0 / 3.14159265358979323846;
  DeviationStats st;
  st.vertex_max_deg.assign(mesh.num_vertices(), 0.0);
  st.vertex_mean_normal_deg.assign(mesh.num_vertices(), 0.0);
  const auto tags = mesh.chart_tags();
  double sum = 0.0;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const Vec3 n = surface.normal(tags[v].x(), tags[v].y());
    Vec3 mean = Vec3::Zero();
    double worst = 0.0;
    for (int f : mesh.vertex_faces()[v]) {
      const Vec3 fn = mesh.face_normal(f);
      mean += fn;
      worst = std::max(worst, std::atan2(n.cross(fn).norm(), n.dot(fn)) * rad2deg);
    }
    st.vertex_max_deg[v] = worst;
    if (mean.norm() > 0.0)
      st.vertex_mean_normal_deg[v] = std::atan2(n.cross(mean).norm(), n.dot(mean)) * rad2deg;
    st.max_deg = std::max(st.max_deg, worst);
    sum += worst;
  }
  st.mean_deg = mesh.num_vertices() ? sum / static_cast<double>(mesh.num_vertices()) : 0.0;

  // Offset: distance of face centroids and edge midpoints to the surface.
  const double period = surface.domain().u1 - surface.domain().u0;
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    const Face& t = mesh.face(static_cast<int>(f));
    std::array<Vec2, 3> uv{tags[static_cast<std::size_t>(t[0])], tags[static_cast<std::size_t>(t[1])],
                           tags[static_cast<std::size_t>(t[2])]};
    // a pole tag carries an arbitrary longitude; borrow the others'
    const auto at_pole = [&](const Vec2& w) {
      return (surface.pole_v0() && w.y() == surface.domain().v0) || (surface.pole_v1() && w.y() == surface.domain().v1);
    };
    std::size_t ref = 0;
    while (ref < 2 && at_pole(uv[ref])) ++ref;
    if (surface.periodic_u())
      for (Vec2& w : uv) {
        while (w.x() - uv[ref].x() > 0.5 * period) w.x() -= period;
        while (uv[ref].x() - w.x() > 0.5 * period) w.x() += period;
      }
    double u_sum = 0.0;
    int u_count = 0;
    for (const Vec2& w : uv)
      if (!at_pole(w)) {
        u_sum += w.x();
        ++u_count;
      }
    if (u_count > 0)
      for (Vec2& w : uv)
        if (at_pole(w)) w.x() = u_sum / u_count;
    const std::array<std::array<double, 3>, 4> bary{{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.5, 0.0},
                                                     {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}}};
    for (const auto& b : bary) {
      const Vec3 x = b[0] * mesh.vertex(t[0]) + b[1] * mesh.vertex(t[1]) + b[2] * mesh.vertex(t[2]);
      const Vec2 start = b[0] * uv[0] + b[1] * uv[1] + b[2] * uv[2];
      const Vec2 foot = surface.project(x, start);
      st.offset = std::max(st.offset, (surface.position(foot.x(), foot.y()) - x).norm());
    }
  }
  return st;
}

} // namespace asymcone
