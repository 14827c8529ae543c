#pragma once

#include "asymcone/field.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asymcone::cli {

enum ExitCode : int {
  kOk = 0,
  kInvariantViolated = 1,  // outputs written, but a checked precondition failed
  kInputError = 2,         // mesh parse or topology error
  kConfigError = 3,
  kRuntimeError = 4,
};

/// "name" or "name:key=value,key=value".
struct SurfaceSpec {
  std::string name;
  std::map<std::string, double> params;

  double get(const std::string& key, double fallback) const;
};
SurfaceSpec parse_surface_spec(std::string_view text);

/// "0.25" is absolute; "3x" is three mean edge lengths.
struct RadiusSpec {
  double value = 3.0;
  bool relative = true;

  double resolve(double mean_edge) const { return relative ? value * mean_edge : value; }
};
RadiusSpec parse_radius(std::string_view text);

struct RunConfig {
  std::string command;
  std::string input;
  std::string surface;
  int nu = 32;
  int nv = 32;
  std::string pattern = "crisscross";
  std::string radius = "3x";
  std::string plane = "face";
  double tol = kDefaultZeroTol;
  double quad_tol = 1e-7;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string format;
  std::vector<int> resolutions{16, 32, 64, 128};
  int probes = 10;
  int cone_planes = kDefaultConePlanes;
  double noise = 0.1;
  int seed_count = 16;
  std::string seeds_file;
  double step = 0.25;
  double max_length = 200.0;
};

/// Analytic reference surfaces by name: plane, cylinder, catenoid, enneper,
/// sphere, bspline. The lantern's reference is its cylinder.
/// ConfigError for unknown names or meshes without a reference (icosphere).
ParametricSurface make_reference(const SurfaceSpec& spec);

/// Columns per row for resolution n: a grid of (aspect * n) x n cells keeps
/// cells close to square in each built-in chart.
int chart_aspect(const SurfaceSpec& spec);

/// Mesh for a surface spec. For the lantern, nu is the sector count and nv the
/// slice count; for the icosphere nu is the subdivision level.
TriangleMesh generate_mesh(const SurfaceSpec& spec, int nu, int nv, GridPattern pattern);

/// Mesh at resolution n of a convergence schedule.
TriangleMesh schedule_mesh(const SurfaceSpec& spec, int n, GridPattern pattern);

/// Up to `count` chart points, picked evenly from the nodes of the coarsest
/// schedule grid (resolution n0) that lie in the middle half of the chart.
std::vector<Vec2> probe_points(const SurfaceSpec& spec, const ParametricSurface& surface, int n0, int count);

GridPattern parse_pattern(std::string_view text);
PlaneMode parse_plane(std::string_view text);

/// Parses argv (CLI11, with --config for key = value files) and runs the
/// subcommand. Returns an ExitCode; messages go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace asymcone::cli
