#pragma once

#include "asymcone/smooth.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asymcone {

enum class PlaneMode { Face, Smooth };
std::string_view to_string(PlaneMode mode);

/// Per-vertex asymptotic directions at one ball radius.
struct CrossField {
  double radius = 0.0;
  PlaneMode mode = PlaneMode::Face;
  std::vector<QuadraticForm3> forms;
  std::vector<EigenData> eigen;
  std::vector<ConeClassification> classes;
  std::vector<Vec3> plane_normals;
  std::vector<DirectionPair> pairs;
};

/// For every vertex m: Q = exact form of Ball(m, radius), intersected with the
/// area-weighted incident-face plane (Face) or the analytic tangent plane at
/// the vertex's chart tag (Smooth).
/// Smooth mode needs `surface` (PreconditionError) and chart tags (TagError).
CrossField build_cross_field(const TriangleMesh& mesh, double radius, PlaneMode mode,
                             const ParametricSurface* surface = nullptr, double tol = kDefaultZeroTol);

/// Per-vertex dump: vertex, class, direction 1, direction 2, lambda1..3.
void write_field_csv(std::ostream& out, const CrossField& field);

/// Largest change of the interpolated pair between adjacent faces, measured
/// at face centroids after unfolding the neighbour onto the face plane.
struct RotationReport {
  double max_deg = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t pairs_over = 0;  // adjacent pairs rotating by 45 degrees or more
  bool ok() const { return pairs_over == 0; }
};
RotationReport field_rotation(const TriangleMesh& mesh, const CrossField& field);

enum class Termination { None, Boundary, MaxLength, Elliptic, ClosedLoop };
std::string_view to_string(Termination t);

struct TraceConfig {
  double step = 0.25;            // fraction of the mean edge length
  double max_length = 200.0;     // arc length cap, in mean edge lengths
  double loop_tolerance = 0.5;   // closing distance, in steps
  double seed_tolerance = 1e-6;  // seed-to-mesh distance, fraction of the bbox diagonal
  bool flip_initial = false;     // start each family along the opposite sign
};

struct Polyline {
  std::vector<Vec3> points;
  Vec3 seed = Vec3::Zero();
  int seed_index = -1;  // position in the seed list
  int seed_point = -1;  // position of the seed in `points`
  int family = 0;
  Termination start = Termination::None;  // end reached by the backward half
  Termination end = Termination::None;    // end reached by the forward half
};

/// Interpolated in-plane direction pair at a point of face f, or nothing in an
/// elliptic region (no corner carries a direction).
std::optional<std::array<Vec3, 2>> face_directions(const TriangleMesh& mesh, const CrossField& field,
                                                   int face, const Vec3& x);

/// Traces one line per direction of the pair at each seed, integrated both
/// ways with the midpoint rule and joined at the seed. A seed in an elliptic
/// region yields a single empty polyline. SeedError for seeds off the mesh.
std::vector<Polyline> trace_lines(const TriangleMesh& mesh, const CrossField& field,
                                  const std::vector<Vec3>& seeds, const TraceConfig& config = {});

enum class LineFormat { ObjLines, Csv };
std::string export_lines(const std::vector<Polyline>& lines, LineFormat format);

/// Nearest face and closest point on it.
struct FaceHit {
  int face = -1;
  Vec3 point = Vec3::Zero();
  double distance = 0.0;
};
FaceHit closest_face(const TriangleMesh& mesh, const Vec3& x);

} // namespace asymcone
