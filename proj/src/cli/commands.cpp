#include "asymcone/cli.hpp"

#include "asymcone/errors.hpp"
#include "asymcone/mesh_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace asymcone::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

struct Source {
  TriangleMesh mesh;
  std::optional<ParametricSurface> surface;
  std::optional<SurfaceSpec> spec;
};

Source acquire(const RunConfig& cfg) {
  Source s;
  if (!cfg.input.empty()) {
    s.mesh = load_mesh_file(cfg.input);
    return s;
  }
  SurfaceSpec spec = parse_surface_spec(cfg.surface);
  s.mesh = generate_mesh(spec, cfg.nu, cfg.nv, parse_pattern(cfg.pattern));
  if (spec.name != "icosphere") s.surface = make_reference(spec);
  s.spec = std::move(spec);
  return s;
}

const ParametricSurface& need_surface(const Source& s, std::string_view command) {
  if (!s.surface || !s.mesh.has_chart_tags())
    throw ConfigError(std::string(command) + " needs --surface with an analytic reference");
  return *s.surface;
}

class Outputs {
public:
  Outputs(const RunConfig& cfg, std::ostream& log) : dir_(cfg.out), log_(log) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw ConfigError("cannot create output directory '" + cfg.out + "'");
  }

  void write(const std::string& name, const std::string& bytes) {
    const fs::path p = dir_ / name;
    std::ofstream f(p, std::ios::binary);
    f << bytes;
    f.close();
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    log_ << p.string() << '\n';
  }

  void write_json(const std::string& name, const ordered_json& j) { write(name, j.dump(2) + "\n"); }

private:
  fs::path dir_;
  std::ostream& log_;
};

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  return v[std::min(k, v.size() - 1)];
}

ordered_json summary(const std::vector<double>& v) {
  ordered_json j;
  j["count"] = v.size();
  if (v.empty()) return j;
  double sum = 0.0;
  for (double x : v) sum += x;
  j["max"] = *std::max_element(v.begin(), v.end());
  j["mean"] = sum / static_cast<double>(v.size());
  j["median"] = percentile(v, 0.5);
  j["p95"] = percentile(v, 0.95);
  return j;
}

ordered_json class_histogram(const std::vector<ConeClassification>& classes) {
  ordered_json j;
  for (ConeClass c : {ConeClass::AllSpace, ConeClass::DoublePlane, ConeClass::LineOnly, ConeClass::PointOnly,
                      ConeClass::GenuineCone, ConeClass::TwoPlanes})
    j[std::string(to_string(c))] = std::count_if(classes.begin(), classes.end(),
                                                 [c](const ConeClassification& k) { return k.kind == c; });
  return j;
}

ordered_json pair_histogram(const std::vector<DirectionPair>& pairs) {
  ordered_json j;
  for (PairKind k : {PairKind::Empty, PairKind::One, PairKind::Two, PairKind::WholePlane})
    j[std::string(to_string(k))] =
        std::count_if(pairs.begin(), pairs.end(), [k](const DirectionPair& p) { return p.kind == k; });
  return j;
}

ordered_json rotation_json(const RotationReport& r) {
  return {{"max_deg", r.max_deg}, {"pairs_checked", r.pairs_checked}, {"pairs_over_45deg", r.pairs_over}};
}

std::string fmt_or_inf(double v) { return std::isinf(v) ? std::string("inf") : fmt17(v); }

std::vector<Vec3> read_seeds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open seeds file '" + path + "'");
  std::vector<Vec3> seeds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x)) continue;
    if (!(ss >> y >> z)) throw ConfigError("seeds file line " + std::to_string(lineno) + ": expected 'x y z'");
    seeds.emplace_back(x, y, z);
  }
  return seeds;
}

// Uniform points on the mesh: a face by area, then a uniform barycentric point.
std::vector<Vec3> random_seeds(const TriangleMesh& mesh, int count, std::uint64_t seed) {
  std::vector<double> cum;
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) cum.push_back(total += mesh.face_area(static_cast<int>(f)));
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  for (int i = 0; i < count; ++i) {
    const double pick = unit_uniform(rng()) * total;
    const auto f = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), pick) - cum.begin()), cum.size() - 1));
    double a = unit_uniform(rng()), b = unit_uniform(rng());
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    const Face& t = mesh.face(f);
    out.push_back((1.0 - a - b) * mesh.vertex(t[0]) + a * mesh.vertex(t[1]) + b * mesh.vertex(t[2]));
  }
  return out;
}

std::vector<Vec3> line_seeds(const RunConfig& cfg, const TriangleMesh& mesh) {
  return cfg.seeds_file.empty() ? random_seeds(mesh, cfg.seed_count, cfg.seed) : read_seeds(cfg.seeds_file);
}

LineFormat line_format(const RunConfig& cfg) {
  if (cfg.format.empty() || cfg.format == "obj") return LineFormat::ObjLines;
  if (cfg.format == "csv") return LineFormat::Csv;
  throw ConfigError("line format must be 'obj' or 'csv'");
}

TraceConfig trace_config(const RunConfig& cfg) {
  TraceConfig t;
  t.step = cfg.step;
  t.max_length = cfg.max_length;
  return t;
}

double spectral_norm(const QuadraticForm3& q) {
  const auto l = eigendecompose(q).values;
  return std::max(std::abs(l[0]), std::abs(l[2]));
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

int cmd_cones(const RunConfig& cfg, const Source& src, Outputs& out) {
  const TriangleMesh& mesh = src.mesh;
  const double r = parse_radius(cfg.radius).resolve(mesh.mean_edge_length());
  const FormAssembler assembler(build_edges(mesh).interior);
  ordered_json verts = ordered_json::array();
  std::vector<ConeClassification> classes;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const QuadraticForm3 q = assembler.assemble({mesh.vertex(static_cast<int>(v)), r});
    const EigenData eig = eigendecompose(q);
    const ConeClassification cls = classify(eig, cfg.tol);
    ordered_json j = eigen_json(static_cast<int>(v), eig, cls);
    j["Q"] = q.coeffs();
    verts.push_back(std::move(j));
    classes.push_back(cls);
  }
  ordered_json doc;
  doc["radius"] = r;
  doc["tol"] = cfg.tol;
  doc["vertices"] = mesh.num_vertices();
  doc["histogram"] = class_histogram(classes);
  doc["per_vertex"] = std::move(verts);
  out.write_json("cones.json", doc);
  return kOk;
}

int cmd_convergence(const RunConfig& cfg, Outputs& out) {
  if (cfg.surface.empty()) throw ConfigError("convergence needs --surface");
  const auto& res = cfg.resolutions;
  if (res.size() < 3) throw ConfigError("convergence needs at least 3 resolutions");
  for (std::size_t i = 0; i < res.size(); ++i)
    if (res[i] < 2 || (i > 0 && res[i] <= res[i - 1]))
      throw ConfigError("resolutions must be increasing and >= 2");
  const SurfaceSpec spec = parse_surface_spec(cfg.surface);
  const ParametricSurface surface = make_reference(spec);
  const GridPattern pattern = parse_pattern(cfg.pattern);
  const RadiusSpec rspec = parse_radius(cfg.radius);
  const auto probes = probe_points(spec, surface, res.front(), cfg.probes);
  if (probes.empty()) throw ConfigError("no probe points for this schedule");

  double radius = 0.0;
  std::ostringstream csv;
  csv << "resolution,probe,u,v,fatness,max_circumradius,dtilde,phi_error,er_deg\n";
  ordered_json rows = ordered_json::array();
  std::vector<double> rmax, perr, dmax;
  for (int n : res) {
    const TriangleMesh mesh = schedule_mesh(spec, n, pattern);
    if (radius == 0.0) radius = rspec.resolve(mesh.mean_edge_length());
    const MeshQuality q = fatness(mesh);
    const FormAssembler assembler(build_edges(mesh).interior);
    double worst_d = 0.0, worst_e = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const BorelBall ball{surface.position(probes[k].x(), probes[k].y()), radius};
      const QuadraticForm3 qp = assembler.assemble(ball);
      const QuadraticForm3 qw = smooth_form(surface, ball, cfg.quad_tol);
      const double d = cone_distance(qp, qw, cfg.cone_planes).value;
      const double e = spectral_norm(qp + (-qw));
      const DirectionPair ref = asymptotic_directions(surface, probes[k], cfg.tol);
      const DirectionPair got = intersect_plane(qp, surface.normal(probes[k].x(), probes[k].y()), cfg.tol);
      const std::string er = ref.kind == PairKind::Two && got.kind == PairKind::Two
                                 ? fmt17(direction_error(ref, got) * kDeg)
                                 : std::string();
      worst_d = std::max(worst_d, d);
      worst_e = std::max(worst_e, e);
      csv << n << ',' << k << ',' << fmt17(probes[k].x()) << ',' << fmt17(probes[k].y()) << ','
          << fmt17(q.fatness) << ',' << fmt17(q.max_circumradius) << ',' << fmt_or_inf(d) << ',' << fmt17(e)
          << ',' << er << '\n';
    }
    rmax.push_back(q.max_circumradius);
    perr.push_back(worst_e);
    dmax.push_back(worst_d);
    ordered_json row;
    row["resolution"] = n;
    row["fatness"] = q.fatness;
    row["max_circumradius"] = q.max_circumradius;
    row["dtilde_max"] = std::isinf(worst_d) ? ordered_json("inf") : ordered_json(worst_d);
    row["phi_error_max"] = worst_e;
    rows.push_back(std::move(row));
  }
  const std::size_t m = dmax.size();
  const bool tail_nonincreasing = dmax[m - 2] <= dmax[m - 3] && dmax[m - 1] <= dmax[m - 2];
  ordered_json doc;
  doc["surface"] = cfg.surface;
  doc["radius"] = radius;
  doc["probes"] = probes.size();
  doc["rows"] = std::move(rows);
  doc["dtilde_last_three_nonincreasing"] = tail_nonincreasing;
  doc["phi_error_loglog_slope"] = log_log_slope(rmax, perr);
  out.write("convergence.csv", csv.str());
  out.write_json("convergence.json", doc);
  return kOk;
}

int cmd_directions(const RunConfig& cfg, const Source& src, Outputs& out) {
  const PlaneMode mode = parse_plane(cfg.plane);
  const ParametricSurface* surf = mode == PlaneMode::Smooth ? &need_surface(src, "smooth plane mode") : nullptr;
  const double r = parse_radius(cfg.radius).resolve(src.mesh.mean_edge_length());
  const CrossField field = build_cross_field(src.mesh, r, mode, surf, cfg.tol);
  const RotationReport rot = field_rotation(src.mesh, field);
  std::ostringstream csv;
  write_field_csv(csv, field);
  ordered_json doc;
  doc["radius"] = r;
  doc["plane"] = std::string(to_string(mode));
  doc["pairs"] = pair_histogram(field.pairs);
  doc["classes"] = class_histogram(field.classes);
  doc["rotation"] = rotation_json(rot);
  out.write("field.csv", csv.str());
  out.write_json("directions.json", doc);
  return kOk;
}

ordered_json lines_json(const std::vector<Polyline>& lines) {
  ordered_json ends;
  for (Termination t : {Termination::Boundary, Termination::MaxLength, Termination::Elliptic, Termination::ClosedLoop})
    ends[std::string(to_string(t))] = std::count_if(lines.begin(), lines.end(),
                                                    [t](const Polyline& l) { return l.start == t || l.end == t; });
  std::size_t points = 0;
  for (const Polyline& l : lines) points += l.points.size();
  return {{"lines", lines.size()}, {"points", points}, {"line_ends", ends}};
}

int cmd_lines(const RunConfig& cfg, const Source& src, Outputs& out, std::ostream& err) {
  const PlaneMode mode = parse_plane(cfg.plane);
  const LineFormat fmt = line_format(cfg);
  const ParametricSurface* surf = mode == PlaneMode::Smooth ? &need_surface(src, "smooth plane mode") : nullptr;
  const double r = parse_radius(cfg.radius).resolve(src.mesh.mean_edge_length());
  const CrossField field = build_cross_field(src.mesh, r, mode, surf, cfg.tol);
  const RotationReport rot = field_rotation(src.mesh, field);
  const auto lines = trace_lines(src.mesh, field, line_seeds(cfg, src.mesh), trace_config(cfg));
  ordered_json doc = lines_json(lines);
  doc["radius"] = r;
  doc["rotation"] = rotation_json(rot);
  out.write(fmt == LineFormat::Csv ? "lines.csv" : "lines.obj", export_lines(lines, fmt));
  out.write_json("lines.json", doc);
  if (!rot.ok()) {
    err << "warning: " << rot.pairs_over << " adjacent face pairs rotate by 45 degrees or more; "
        << "branch matching may switch families\n";
    return kInvariantViolated;
  }
  return kOk;
}

int cmd_compare(const RunConfig& cfg, const Source& src, Outputs& out) {
  const ParametricSurface& surface = need_surface(src, "compare");
  const PlaneMode mode = parse_plane(cfg.plane);
  const TriangleMesh& mesh = src.mesh;
  const double r = parse_radius(cfg.radius).resolve(mesh.mean_edge_length());
  const CrossField field = build_cross_field(mesh, r, mode, &surface, cfg.tol);
  const DeviationStats dev = angular_deviation(mesh, surface);
  const auto interior = vertices_away_from_boundary(mesh, r);
  std::ostringstream csv;
  csv << "vertex,u,v,interior,status,er_deg,normal_dev_deg\n";
  std::vector<double> ers, normals;
  std::size_t elliptic = 0, other = 0;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const Vec2 uv = mesh.chart_tags()[v];
    std::string status = "ok";
    double er = 0.0;
    DirectionPair ref;
    try {
      ref = asymptotic_directions(surface, uv, cfg.tol);
    } catch (const DomainError&) {
      status = "degenerate";
    }
    if (status == "ok") {
      if (ref.kind == PairKind::Empty || field.pairs[v].kind == PairKind::Empty) status = "elliptic";
      else if (ref.kind != PairKind::Two || field.pairs[v].kind != PairKind::Two) status = "degenerate";
      else er = direction_error(ref, field.pairs[v]) * kDeg;
    }
    if (interior[v]) {
      normals.push_back(dev.vertex_mean_normal_deg[v]);
      if (status == "ok") ers.push_back(er);
      else if (status == "elliptic") ++elliptic;
      else ++other;
    }
    csv << v << ',' << fmt17(uv.x()) << ',' << fmt17(uv.y()) << ',' << (interior[v] ? 1 : 0) << ',' << status
        << ',' << fmt17(er) << ',' << fmt17(dev.vertex_mean_normal_deg[v]) << '\n';
  }
  ordered_json doc;
  doc["radius"] = r;
  doc["plane"] = std::string(to_string(mode));
  doc["interior_vertices"] = normals.size();
  doc["interior_elliptic"] = elliptic;
  doc["interior_degenerate"] = other;
  doc["er_deg"] = summary(ers);
  doc["normal_dev_deg"] = summary(normals);
  out.write("compare.csv", csv.str());
  out.write_json("compare.json", doc);
  return kOk;
}

int cmd_fatness(const Source& src, Outputs& out) {
  ordered_json doc = mesh_stats_json(src.mesh);
  if (src.surface && src.mesh.has_chart_tags()) {
    const DeviationStats dev = angular_deviation(src.mesh, *src.surface);
    doc["angular_deviation"] = {{"max_deg", dev.max_deg}, {"mean_deg", dev.mean_deg}, {"offset", dev.offset}};
  }
  out.write_json("fatness.json", doc);
  return kOk;
}

int cmd_noise(const RunConfig& cfg, const Source& src, Outputs& out, std::ostream& err) {
  if (!(cfg.noise >= 0.0)) throw ConfigError("noise amplitude must be >= 0");
  const LineFormat fmt = line_format(cfg);
  const double scale = 1.0 / src.mesh.mean_edge_length();
  std::vector<Vec3> scaled;
  for (const Vec3& p : src.mesh.vertices()) scaled.push_back(scale * p);
  const TriangleMesh mesh = src.mesh.with_vertices(std::move(scaled));
  const TriangleMesh noisy = perturb_vertices(mesh, cfg.noise, cfg.seed);
  const CrossField clean = build_cross_field(mesh, 3.0, PlaneMode::Face, nullptr, cfg.tol);
  const CrossField r3 = build_cross_field(noisy, 3.0, PlaneMode::Face, nullptr, cfg.tol);
  const CrossField r6 = build_cross_field(noisy, 6.0, PlaneMode::Face, nullptr, cfg.tol);
  const auto interior = vertices_away_from_boundary(mesh, 6.0);

  std::ostringstream csv;
  csv << "vertex,dev_r3_deg,dev_r6_deg\n";
  std::vector<double> d3, d6;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    if (!interior[v]) continue;
    if (clean.pairs[v].kind != PairKind::Two || r3.pairs[v].kind != PairKind::Two ||
        r6.pairs[v].kind != PairKind::Two)
      continue;
    d3.push_back(direction_error(clean.pairs[v], r3.pairs[v]) * kDeg);
    d6.push_back(direction_error(clean.pairs[v], r6.pairs[v]) * kDeg);
    csv << v << ',' << fmt17(d3.back()) << ',' << fmt17(d6.back()) << '\n';
  }
  const auto seeds = cfg.seeds_file.empty() ? random_seeds(noisy, cfg.seed_count, cfg.seed)
                                            : read_seeds(cfg.seeds_file);
  const TraceConfig tc = trace_config(cfg);
  const auto lines3 = trace_lines(noisy, r3, seeds, tc);
  const auto lines6 = trace_lines(noisy, r6, seeds, tc);
  const RotationReport rot3 = field_rotation(noisy, r3), rot6 = field_rotation(noisy, r6);

  ordered_json doc;
  doc["amplitude"] = cfg.noise;
  doc["seed"] = cfg.seed;
  doc["compared_vertices"] = d3.size();
  doc["median_dev_r3_deg"] = percentile(d3, 0.5);
  doc["median_dev_r6_deg"] = percentile(d6, 0.5);
  doc["r6_smoother"] = !d3.empty() && percentile(d6, 0.5) < percentile(d3, 0.5);
  doc["rotation_r3"] = rotation_json(rot3);
  doc["rotation_r6"] = rotation_json(rot6);
  const std::string ext = fmt == LineFormat::Csv ? ".csv" : ".obj";
  out.write("noise.csv", csv.str());
  out.write("noise_lines_r3" + ext, export_lines(lines3, fmt));
  out.write("noise_lines_r6" + ext, export_lines(lines6, fmt));
  out.write_json("noise.json", doc);
  if (!rot3.ok() || !rot6.ok()) {
    err << "warning: the noisy cross field rotates by 45 degrees or more between adjacent faces\n";
    return kInvariantViolated;
  }
  return kOk;
}

int cmd_mesh(const RunConfig& cfg, const Source& src, Outputs& out) {
  std::ostringstream bytes;
  std::string name;
  if (cfg.format.empty() || cfg.format == "off") {
    write_off(bytes, src.mesh);
    name = "mesh.off";
  } else if (cfg.format == "obj") {
    write_obj(bytes, src.mesh);
    name = "mesh.obj";
  } else {
    throw ConfigError("mesh format must be 'off' or 'obj'");
  }
  out.write(name, bytes.str());
  out.write_json("mesh.json", mesh_stats_json(src.mesh));
  return kOk;
}

void validate(const RunConfig& cfg) {
  if (cfg.command != "convergence" && cfg.input.empty() == cfg.surface.empty())
    throw ConfigError("give exactly one of --input or --surface");
  if (cfg.command == "convergence" && !cfg.input.empty())
    throw ConfigError("convergence generates its meshes; use --surface");
  if (!(cfg.tol > 0.0) || !(cfg.quad_tol > 0.0)) throw ConfigError("tolerances must be > 0");
  if (cfg.probes < 1) throw ConfigError("probes must be >= 1");
  if (cfg.cone_planes < 100) throw ConfigError("cone-planes must be >= 100");
  if (cfg.seed_count < 0) throw ConfigError("seed-count must be >= 0");
  if (!(cfg.step > 0.0) || !(cfg.max_length > cfg.step)) throw ConfigError("need step > 0 and max-length > step");
  parse_radius(cfg.radius);
  parse_plane(cfg.plane);
  parse_pattern(cfg.pattern);
}

} // namespace

std::vector<Vec2> probe_points(const SurfaceSpec& spec, const ParametricSurface& surface, int n0, int count) {
  const ChartDomain& d = surface.domain();
  const int cols = chart_aspect(spec) * n0;
  const double du = (d.u1 - d.u0) / cols, dv = (d.v1 - d.v0) / n0;
  std::vector<Vec2> nodes;
  for (int j = 0; j <= n0; ++j) {
    const double v = d.v0 + j * dv;
    if (v < d.v0 + 0.25 * (d.v1 - d.v0) || v > d.v1 - 0.25 * (d.v1 - d.v0)) continue;
    for (int i = 0; i < cols; ++i) {
      const double u = d.u0 + i * du;
      if (!surface.periodic_u() && (u < d.u0 + 0.25 * (d.u1 - d.u0) || u > d.u1 - 0.25 * (d.u1 - d.u0))) continue;
      nodes.emplace_back(u, v);
    }
  }
  std::vector<Vec2> out;
  const std::size_t n = std::min(nodes.size(), static_cast<std::size_t>(count));
  for (std::size_t k = 0; k < n; ++k) out.push_back(nodes[k * nodes.size() / n]);
  return out;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    Outputs outputs(cfg, out);
    if (cfg.command == "convergence") return cmd_convergence(cfg, outputs);
    const Source src = acquire(cfg);
    if (cfg.command == "cones") return cmd_cones(cfg, src, outputs);
    if (cfg.command == "directions") return cmd_directions(cfg, src, outputs);
    if (cfg.command == "lines") return cmd_lines(cfg, src, outputs, err);
    if (cfg.command == "compare") return cmd_compare(cfg, src, outputs);
    if (cfg.command == "fatness") return cmd_fatness(src, outputs);
    if (cfg.command == "noise") return cmd_noise(cfg, src, outputs, err);
    if (cfg.command == "mesh") return cmd_mesh(cfg, src, outputs);
    throw ConfigError("unknown command '" + cfg.command + "'");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const TopologyError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const OrientationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

} // namespace asymcone::cli
