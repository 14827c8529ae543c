#pragma once

#include "asymcone/measure.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace asymcone {

/// Eigenvalues sorted descending with matching orthonormal eigenvectors
/// (columns of `vectors`). Each eigenvector's first non-negligible component
/// is positive.
struct EigenData {
  std::array<double, 3> values{};
  Mat3 vectors = Mat3::Identity();
  /// max_i |Q v_i - lambda_i v_i|
  double residual = 0.0;

  Vec3 vector(int i) const { return vectors.col(i); }
};

/// Closed-form (trigonometric Cardano) eigen-solver for symmetric 3x3
/// matrices, with a cyclic Jacobi fallback near repeated roots.
EigenData eigendecompose(const QuadraticForm3& form);
/// Cyclic Jacobi rotations only; exposed for testing the fallback path.
EigenData eigendecompose_jacobi(const QuadraticForm3& form);

enum class ConeClass {
  AllSpace,     // Q = 0
  DoublePlane,  // rank 1: the isotropic cone is a plane counted twice
  LineOnly,     // rank 2 semidefinite: the kernel line
  PointOnly,    // definite: only the origin
  GenuineCone,  // indefinite, full rank
  TwoPlanes,    // indefinite, rank 2
};

std::string_view to_string(ConeClass c);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

struct ConeClassification {
  ConeClass kind = ConeClass::AllSpace;
  Inertia inertia;
  int rank = 0;
};

inline constexpr double kDefaultZeroTol = 1e-8;

/// Eigenvalues with |lambda| <= tol * max|lambda| count as zero.
ConeClassification classify(const QuadraticForm3& form, double tol = kDefaultZeroTol);
ConeClassification classify(const EigenData& eig, double tol = kDefaultZeroTol);

enum class PairKind { Empty, One, Two, WholePlane };

std::string_view to_string(PairKind k);

/// Up to two sign-free unit directions. `One` is a doubled direction.
struct DirectionPair {
  PairKind kind = PairKind::Empty;
  std::array<Vec3, 2> dirs{Vec3::Zero(), Vec3::Zero()};

  int count() const { return kind == PairKind::One ? 1 : kind == PairKind::Two ? 2 : 0; }
  static DirectionPair empty() { return {}; }
  static DirectionPair whole_plane() { return {PairKind::WholePlane, {Vec3::Zero(), Vec3::Zero()}}; }
  static DirectionPair one(const Vec3& d);
  static DirectionPair two(const Vec3& a, const Vec3& b);
};

/// Flips `d` so that its first component with magnitude above 1e-14 is positive.
Vec3 canonical_sign(const Vec3& d);

/// Orthonormal (u, v) with u x v = n, chosen deterministically from n.
std::array<Vec3, 2> plane_basis(const Vec3& n);

/// Isotropic directions of `form` restricted to the plane with unit normal
/// `plane_normal`.
DirectionPair intersect_plane(const QuadraticForm3& form, const Vec3& plane_normal,
                              double tol = kDefaultZeroTol);

/// Unit isotropic vectors (one per antipodal pair) found on `planes`
/// Fibonacci planes, plus kernel eigenvectors and, for the zero form, the
/// plane normals themselves.
std::vector<Vec3> unit_cone_samples(const QuadraticForm3& form, int planes,
                                    double tol = kDefaultZeroTol);

struct ConeDistance {
  double value = 0.0;  // +inf when either unit cone is empty
  double resolution = 0.0;
  bool infinite() const;
};

inline constexpr int kDefaultConePlanes = 1024;

/// inf over unit isotropic vectors x of A and y of B of |x - y| (vectors
/// taken up to sign). Brute force over the Fibonacci samples, then the
/// closest pairs are polished by alternating projection onto both cones.
ConeDistance cone_distance(const QuadraticForm3& a, const QuadraticForm3& b,
                           int samples = kDefaultConePlanes);

/// |q(x)| <= eps for unit x; PreconditionError otherwise.
bool epsilon_membership(const QuadraticForm3& form, const Vec3& x, double eps);

/// Angle in [0, pi/2] between two sign-free lines.
double line_angle(const Vec3& a, const Vec3& b);

/// Mean inter-direction angle under the better of the two matchings.
/// ArityError unless both pairs hold exactly two directions.
double direction_error(const DirectionPair& reference, const DirectionPair& estimate);

nlohmann::ordered_json eigen_json(int vertex, const EigenData& eig, const ConeClassification& cls);

} // namespace asymcone
