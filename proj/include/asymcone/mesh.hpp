#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace asymcone {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Face = std::array<int, 3>;

// Dihedral angles below this magnitude are treated as exactly zero.
inline constexpr double kFlatAngleTol = 1e-10;

/// Oriented triangle surface. Faces are counter-clockwise seen from outside
/// the bounded domain, so face normals point outward.
///
/// Construction validates index ranges, degenerate faces, edge manifoldness
/// and consistent winding; a constructed mesh is immutable.
class TriangleMesh {
public:
  TriangleMesh() = default;

  /// Throws TopologyError or OrientationError when the invariants fail.
  /// `chart_tags`, when non-empty, must have one entry per vertex.
  TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces,
               std::vector<Vec2> chart_tags = {});

  std::span<const Vec3> vertices() const { return vertices_; }
  std::span<const Face> faces() const { return faces_; }
  const Vec3& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const Face& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  bool has_chart_tags() const { return !tags_.empty(); }
  std::span<const Vec2> chart_tags() const { return tags_; }

  /// Number of distinct undirected edges.
  std::size_t num_edges() const { return num_edges_; }
  /// True when no edge has a single incident face.
  bool is_closed() const { return closed_; }

  /// Unit outward normal of face f (zero vector for a degenerate triangle).
  Vec3 face_normal(int f) const;
  Vec3 face_centroid(int f) const;
  double face_area(int f) const;

  /// Divergence-theorem volume; positive for an outward-oriented closed mesh.
  double signed_volume() const;
  double bounding_box_diagonal() const;
  double mean_edge_length() const;

  /// Faces incident to each vertex, in increasing face order.
  const std::vector<std::vector<int>>& vertex_faces() const { return vertex_faces_; }

  /// Same connectivity with every face reversed (domain on the other side).
  TriangleMesh flipped() const;
  /// Same connectivity and tags with new positions.
  TriangleMesh with_vertices(std::vector<Vec3> vertices) const;

private:
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<Vec2> tags_;
  std::vector<std::vector<int>> vertex_faces_;
  std::size_t num_edges_ = 0;
  bool closed_ = true;
};

/// Interior edge with its dihedral data.
///
/// The frame (plus, minus, dir) is direct orthonormal: `plus` bisects the two
/// face normals, `minus = dir x plus` is the tangential bisector and `dir`
/// points from the lower to the higher vertex index.
struct EdgeRecord {
  std::array<int, 2> vertices{};  // lo, hi
  Vec3 p0 = Vec3::Zero();
  Vec3 p1 = Vec3::Zero();
  Vec3 dir = Vec3::Zero();
  double length = 0.0;
  std::array<int, 2> faces{};  // increasing face index
  Vec3 n1 = Vec3::Zero();
  Vec3 n2 = Vec3::Zero();
  /// Radians in (-pi, pi); positive iff convex w.r.t. the bounded domain.
  double angle = 0.0;
  Vec3 plus = Vec3::Zero();
  Vec3 minus = Vec3::Zero();
};

struct BoundaryEdge {
  std::array<int, 2> vertices{};
  int face = -1;
};

struct EdgeTable {
  std::vector<EdgeRecord> interior;
  std::vector<BoundaryEdge> boundary;
};

/// One record per interior edge, ordered by (lo, hi) vertex index.
EdgeTable build_edges(const TriangleMesh& mesh);

struct MeshQuality {
  std::vector<double> simplex_fatness;  // per face
  std::vector<double> simplex_size;     // per face, longest edge
  double fatness = 0.0;                 // minimum over faces
  double mean_edge_length = 0.0;
  double max_circumradius = 0.0;
};

/// Fatness over the triangles and their edges: for each triangle, the minimum
/// of edge_length / size and area / size^2.
MeshQuality fatness(const TriangleMesh& mesh);

double circumradius(const Vec3& a, const Vec3& b, const Vec3& c);

/// Displaces every vertex by an independent vector drawn uniformly from the
/// ball of radius `amplitude`. Deterministic for a given seed.
TriangleMesh perturb_vertices(const TriangleMesh& mesh, double amplitude, std::uint64_t seed);

/// Portable uniform double in [0, 1) from a 64-bit engine output.
inline double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Vertices on the boundary rim (incident to an edge with one face).
std::vector<bool> boundary_vertices(const TriangleMesh& mesh);

/// Vertices farther than `margin` from every boundary vertex.
std::vector<bool> vertices_away_from_boundary(const TriangleMesh& mesh, double margin);

} // namespace asymcone
