#include "asymcone/cli.hpp"

#include "asymcone/errors.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

namespace asymcone::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError("cannot read " + std::string(what) + " from '" + std::string(text) + "'");
  return v;
}

int as_count(const SurfaceSpec& spec, const std::string& key, double fallback) {
  const double v = spec.get(key, fallback);
  if (v != std::floor(v) || v < 0.0 || v > 1e9)
    throw ConfigError("surface parameter '" + key + "' must be a non-negative integer");
  return static_cast<int>(v);
}

void check_keys(const SurfaceSpec& spec, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : spec.params) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown parameter '" + key + "' for surface '" + spec.name + "'");
  }
}

void check_positive(double v, std::string_view what) {
  if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be > 0");
}

} // namespace

double SurfaceSpec::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

SurfaceSpec parse_surface_spec(std::string_view text) {
  SurfaceSpec spec;
  const auto colon = text.find(':');
  spec.name = std::string(trim(text.substr(0, colon)));
  if (spec.name.empty()) throw ConfigError("empty surface name");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("surface parameter '" + std::string(item) + "' is not key=value");
    const std::string key(trim(item.substr(0, eq)));
    spec.params[key] = parse_number(item.substr(eq + 1), "surface parameter '" + key + "'");
  }
  return spec;
}

RadiusSpec parse_radius(std::string_view text) {
  text = trim(text);
  RadiusSpec r;
  r.relative = !text.empty() && (text.back() == 'x' || text.back() == 'X');
  if (r.relative) text.remove_suffix(1);
  r.value = parse_number(text, "radius");
  check_positive(r.value, "radius");
  return r;
}

GridPattern parse_pattern(std::string_view text) {
  if (text == "diagonal") return GridPattern::Diagonal;
  if (text == "crisscross") return GridPattern::Crisscross;
  throw ConfigError("pattern must be 'diagonal' or 'crisscross'");
}

PlaneMode parse_plane(std::string_view text) {
  if (text == "face") return PlaneMode::Face;
  if (text == "smooth") return PlaneMode::Smooth;
  throw ConfigError("plane must be 'face' or 'smooth'");
}

ParametricSurface make_reference(const SurfaceSpec& s) {
  if (s.name == "plane") {
    check_keys(s, {"extent"});
    check_positive(s.get("extent", 1.0), "extent");
    return make_plane(s.get("extent", 1.0));
  }
  if (s.name == "cylinder" || s.name == "lantern") {
    if (s.name == "cylinder") check_keys(s, {"radius", "height"});
    else check_keys(s, {"radius", "height", "power"});
    check_positive(s.get("radius", 1.0), "radius");
    check_positive(s.get("height", 1.0), "height");
    return make_cylinder(s.get("radius", 1.0), s.get("height", 1.0));
  }
  if (s.name == "catenoid") {
    check_keys(s, {"vmin", "vmax"});
    if (!(s.get("vmin", -1.0) < s.get("vmax", 1.0))) throw ConfigError("catenoid needs vmin < vmax");
    return make_catenoid(s.get("vmin", -1.0), s.get("vmax", 1.0));
  }
  if (s.name == "enneper") {
    check_keys(s, {"extent"});
    check_positive(s.get("extent", 1.0), "extent");
    return make_enneper(s.get("extent", 1.0));
  }
  if (s.name == "sphere") {
    check_keys(s, {"radius"});
    check_positive(s.get("radius", 1.0), "radius");
    return make_sphere(s.get("radius", 1.0));
  }
  if (s.name == "bspline") {
    check_keys(s, {"seed", "amplitude"});
    const double seed = s.get("seed", static_cast<double>(kDefaultBSplineSeed));
    if (seed < 0.0 || seed != std::floor(seed) || seed > 9007199254740992.0)
      throw ConfigError("bspline seed must be a non-negative integer");
    return make_bspline_graph(bspline_net(static_cast<std::uint64_t>(seed), s.get("amplitude", kDefaultBSplineAmplitude)));
  }
  if (s.name == "icosphere") throw ConfigError("icosphere has no chart-tagged reference surface");
  throw ConfigError("unknown surface '" + s.name + "'");
}

int chart_aspect(const SurfaceSpec& s) {
  if (s.name == "catenoid") {
    // conformal chart: u spans 2 pi, v spans vmax - vmin
    const double span = s.get("vmax", 1.0) - s.get("vmin", -1.0);
    return std::max(1, static_cast<int>(std::lround(2.0 * std::numbers::pi / span)));
  }
  if (s.name == "cylinder") {
    const double ratio = 2.0 * std::numbers::pi * s.get("radius", 1.0) / s.get("height", 1.0);
    return std::max(1, static_cast<int>(std::lround(ratio)));
  }
  if (s.name == "sphere") return 2;
  return 1;
}

TriangleMesh generate_mesh(const SurfaceSpec& spec, int nu, int nv, GridPattern pattern) {
  if (spec.name == "icosphere") {
    check_keys(spec, {"radius", "subdivisions"});
    check_positive(spec.get("radius", 1.0), "radius");
    return make_icosphere(spec.get("radius", 1.0), as_count(spec, "subdivisions", 3));
  }
  if (spec.name == "lantern") {
    make_reference(spec);  // validates the parameters
    if (nu < 3 || nv < 2) throw ConfigError("lantern needs nu (sectors) >= 3 and nv (slices) >= 2");
    return make_lantern(spec.get("radius", 1.0), spec.get("height", 1.0), nv, nu);
  }
  if (nu < 2 || nv < 2) throw ConfigError("grid resolution must be >= 2");
  return inscribe_mesh(make_reference(spec), nu, nv, pattern);
}

TriangleMesh schedule_mesh(const SurfaceSpec& spec, int n, GridPattern pattern) {
  if (spec.name == "lantern") {
    const int power = as_count(spec, "power", 2);
    const double slices = std::pow(static_cast<double>(n), power);
    if (slices > 1e7) throw ConfigError("lantern schedule too large");
    return generate_mesh(spec, n, std::max(2, static_cast<int>(slices)), pattern);
  }
  return generate_mesh(spec, chart_aspect(spec) * n, n, pattern);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Asymptotic measures, cones and lines of triangulated surfaces", "asymcone"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);
  app.fallthrough();

  const std::vector<std::pair<std::string, std::string>> commands{
      {"cones", "Per-vertex forms, eigen data and cone classes (cones.json)"},
      {"convergence", "Discrete against smooth measures over a resolution schedule"},
      {"directions", "Per-vertex cross field (field.csv, directions.json)"},
      {"lines", "Integrated asymptotic lines (lines.obj or lines.csv)"},
      {"compare", "Direction error against the analytic reference (compare.csv)"},
      {"fatness", "Mesh quality and angular deviation (fatness.json)"},
      {"noise", "Perturbed mesh, fields at R = 3 and R = 6 (noise.json)"},
      {"mesh", "Export the generated mesh"},
  };
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&cfg, n = name] { cfg.command = n; });

  app.add_option("--input", cfg.input, "Mesh file (.obj, .off, .ply)");
  app.add_option("--surface", cfg.surface, "Generated input: name[:key=value,...]");
  app.add_option("--nu", cfg.nu, "Grid cells along u (lantern: sectors)");
  app.add_option("--nv", cfg.nv, "Grid cells along v (lantern: slices)");
  app.add_option("--pattern", cfg.pattern, "diagonal or crisscross");
  app.add_option("--radius", cfg.radius, "Ball radius; suffix x for mean edge lengths");
  app.add_option("--plane", cfg.plane, "face or smooth");
  app.add_option("--tol", cfg.tol, "Relative zero tolerance for eigenvalues");
  app.add_option("--quad-tol", cfg.quad_tol, "Absolute tolerance of the smooth quadrature");
  app.add_option("--seed", cfg.seed, "Seed for noise and random line seeds");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--format", cfg.format, "lines: obj or csv; mesh: off or obj");
  app.add_option("--resolutions", cfg.resolutions, "Comma separated schedule")->delimiter(',');
  app.add_option("--probes", cfg.probes, "Probe points per resolution");
  app.add_option("--cone-planes", cfg.cone_planes, "Sample planes for cone distances");
  app.add_option("--noise", cfg.noise, "Noise amplitude in mean edge lengths");
  app.add_option("--seed-count", cfg.seed_count, "Random line seeds when no seeds file is given");
  app.add_option("--seeds-file", cfg.seeds_file, "Line seeds, one 'x y z' per line");
  app.add_option("--step", cfg.step, "Trace step in mean edge lengths");
  app.add_option("--max-length", cfg.max_length, "Trace length cap in mean edge lengths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return execute(cfg, out, err);
}

} // namespace asymcone::cli
