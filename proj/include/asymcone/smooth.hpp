#pragma once

#include "asymcone/surface.hpp"

#include <cstddef>
#include <vector>

namespace asymcone {

struct SmoothMeasure {
  QuadraticForm3 form;
  double area = 0.0;  // area of the surface inside the ball
  std::size_t cells = 0;
};

struct QuadratureOptions {
  double tol = 1e-6;
  int base_level = 5;   // the chart starts as a 2^level x 2^level grid
  int max_depth = 14;   // subdivision levels below the base grid
  std::size_t cell_budget = 4'000'000;
};

/// ∫_{W ∩ B} h(pr_T x, pr_T x) dA as a quadratic form in x, by adaptive
/// quadtree subdivision of the chart. Cells inside the ball use centroid
/// samples with one Richardson step; cells cut by the sphere are weighted by
/// the inside fraction of a linear fit of the distance function.
/// Throws QuadratureError when the budget or depth cap is exhausted.
SmoothMeasure smooth_measure(const ParametricSurface& surface, const BorelBall& ball,
                             const QuadratureOptions& opts = {});
QuadraticForm3 smooth_form(const ParametricSurface& surface, const BorelBall& ball, double tol = 1e-6);

enum class GridPattern { Diagonal, Crisscross };

/// Triangulates the (nu x nv) chart grid with vertices on the surface and
/// chart tags retained. Periodic charts wrap in u; pole rows collapse.
TriangleMesh inscribe_mesh(const ParametricSurface& surface, int nu, int nv,
                           GridPattern pattern = GridPattern::Crisscross);

/// Schwarz lantern on the cylinder of the given radius and height: `slices`
/// layers of `sectors`-gon rings, alternate rings rotated by half a sector.
/// Chart tags are the cylinder parameters (angle, height).
TriangleMesh make_lantern(double radius, double height, int slices, int sectors);

/// Subdivided icosahedron projected to the sphere, outward oriented.
TriangleMesh make_icosphere(double radius, int subdivisions);

/// Flat triangulated square [-extent, extent]^2 in z = 0 with chart tags.
TriangleMesh make_flat_grid(double extent, int n);

struct DeviationStats {
  double max_deg = 0.0;   // worst face-normal deviation over all vertices
  double mean_deg = 0.0;  // mean over vertices of the per-vertex maximum
  std::vector<double> vertex_max_deg;
  /// Angle between the surface normal and the mean incident-face normal.
  std::vector<double> vertex_mean_normal_deg;
  /// Max distance from face sample points to the surface.
  double offset = 0.0;
};

/// Compares face normals with the analytic normal at each vertex's chart tag.
/// TagError if the mesh has no chart tags.
DeviationStats angular_deviation(const TriangleMesh& mesh, const ParametricSurface& surface);

} // namespace asymcone
