#pragma once

#include "asymcone/mesh.hpp"

#include "json.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace asymcone {

struct BorelBall {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;  // > 0
};

/// Symmetric bilinear form on R^3 stored as its six independent
/// coefficients in the order xx, xy, xz, yy, yz, zz.
class QuadraticForm3 {
public:
  QuadraticForm3() { c_.fill(0.0); }
  explicit QuadraticForm3(const std::array<double, 6>& coeffs) : c_(coeffs) {}

  /// Uses the upper triangle of `m`.
  static QuadraticForm3 from_matrix(const Mat3& m);
  /// s * (u ⊗ u)
  static QuadraticForm3 outer(const Vec3& u, double s = 1.0);

  const std::array<double, 6>& coeffs() const { return c_; }
  double xx() const { return c_[0]; }
  double xy() const { return c_[1]; }
  double xz() const { return c_[2]; }
  double yy() const { return c_[3]; }
  double yz() const { return c_[4]; }
  double zz() const { return c_[5]; }

  Mat3 matrix() const;
  double operator()(const Vec3& x) const;
  /// Frobenius norm of the full symmetric matrix.
  double norm() const;
  bool is_zero() const;

  QuadraticForm3& operator+=(const QuadraticForm3& o);
  QuadraticForm3& operator*=(double s);
  friend QuadraticForm3 operator+(QuadraticForm3 a, const QuadraticForm3& b) { return a += b; }
  friend QuadraticForm3 operator*(double s, QuadraticForm3 a) { return a *= s; }
  friend QuadraticForm3 operator-(const QuadraticForm3& a) { return -1.0 * a; }
  bool operator==(const QuadraticForm3& o) const = default;

private:
  std::array<double, 6> c_;
};

/// x^T Q x.
double evaluate(const QuadraticForm3& form, const Vec3& x);

/// Length of the intersection of the closed segment [a, b] with the closed ball.
double clip_length(const Vec3& a, const Vec3& b, const BorelBall& ball);

/// Coefficients applied to plus⊗plus and minus⊗minus for a unit clipped length.
struct EdgeCoefficients {
  double plus = 0.0;   // (angle - sin angle) / 2
  double minus = 0.0;  // (angle + sin angle) / 2
};
EdgeCoefficients edge_coefficients(double angle);

/// Per-unit-length form of one edge: c+ (e+ ⊗ e+) + c- (e- ⊗ e-).
QuadraticForm3 edge_form(const EdgeRecord& edge);

/// Numeric integral over the normal-cycle arc of a unit-length edge with the
/// given dihedral angle, for x = (a, b, c) expressed in (e+, e-, ê):
///   ∫_{-angle/2}^{angle/2} <x, t(φ)>^2 dφ,  t(φ) = -sin φ e+ + cos φ e-,
/// where t is the tangent direction orthogonal to the arc normal
/// cos φ e+ + sin φ e-. Composite midpoint rule on `samples` cells plus one
/// Richardson step against `samples / 2` cells.
/// Throws DomainError if |angle| >= pi or samples < 64.
double wedge_oracle(double angle, const Vec3& x_in_frame, int samples);

struct EdgeContribution {
  int edge = -1;
  double clipped_length = 0.0;
  EdgeCoefficients coeffs;
};

enum class MeasureMode { Exact, Approx };

std::string_view to_string(MeasureMode mode);

/// Exact: Σ l(e ∩ B) Q_e. Approx: Σ l(e ∩ B) angle (e- ⊗ e-).
QuadraticForm3 assemble_form(std::span<const EdgeRecord> edges, const BorelBall& ball,
                             MeasureMode mode = MeasureMode::Exact);
/// Sum of the forms of each ball, in ball order.
QuadraticForm3 assemble_form(std::span<const EdgeRecord> edges, std::span<const BorelBall> balls,
                             MeasureMode mode = MeasureMode::Exact);

/// Non-zero per-edge contributions for one ball, in edge order.
std::vector<EdgeContribution> edge_contributions(std::span<const EdgeRecord> edges,
                                                 const BorelBall& ball);

/// Edge table with a uniform grid over edge bounding boxes so that many
/// small balls can be assembled without scanning every edge. Results match
/// assemble_form bit for bit (edges are summed in table order).
class FormAssembler {
public:
  explicit FormAssembler(std::vector<EdgeRecord> edges, double cell_size = 0.0);

  QuadraticForm3 assemble(const BorelBall& ball, MeasureMode mode = MeasureMode::Exact) const;
  std::span<const EdgeRecord> edges() const { return edges_; }

private:
  std::vector<EdgeRecord> edges_;
  Vec3 origin_ = Vec3::Zero();
  double cell_ = 1.0;
  std::array<int, 3> dims_{1, 1, 1};
  std::vector<std::vector<int>> buckets_;

  std::array<int, 3> cell_of(const Vec3& p) const;
};

nlohmann::ordered_json form_json(const QuadraticForm3& form, const BorelBall& ball, MeasureMode mode);

} // namespace asymcone
