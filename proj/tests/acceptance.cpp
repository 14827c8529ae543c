// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments
// select criteria by number.

#include "asymcone/cli.hpp"
#include "asymcone/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace asymcone;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = 180.0 / kPi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.4g") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "/" : "") + fmt(f, v[i]);
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double fraction(std::size_t num, std::size_t den) { return den ? static_cast<double>(num) / den : 0.0; }

bool non_increasing_tail(const std::vector<double>& v) {
  const std::size_t n = v.size();
  return n >= 3 && v[n - 2] <= v[n - 3] && v[n - 1] <= v[n - 2];
}

// 1. closed-form edge contribution against the numeric arc integral
Outcome wedge_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double angle = ang(rng);
    const Vec3 x = Vec3(g(rng), g(rng), g(rng)).normalized();
    const EdgeCoefficients c = edge_coefficients(angle);
    const double closed = c.plus * x[0] * x[0] + c.minus * x[1] * x[1];
    const double oracle = wedge_oracle(angle, x, 4096);
    // relative to the size of the edge form
    worst = std::max(worst, std::abs(closed - oracle) / (std::abs(c.plus) + std::abs(c.minus)));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-8 && t < 5.0, fmt("max relative deviation %.3g over 1e4 trials, %.2f s", worst, t)};
}

// 2. prism band against the cylinder value pi
Outcome cylinder_limit() {
  const TriangleMesh prism = inscribe_mesh(make_cylinder(1.0, 1.0), 128, 2, GridPattern::Diagonal);
  const auto edges = build_edges(prism).interior;
  const BorelBall ball{{0, 0, 0.5}, 2.0};
  const double exact = assemble_form(edges, ball, MeasureMode::Exact)(Vec3::UnitX());
  const double approx = assemble_form(edges, ball, MeasureMode::Approx)(Vec3::UnitX());
  const double smooth = smooth_form(make_cylinder(1.0, 1.0), ball, 1e-7)(Vec3::UnitX());
  const double e1 = std::abs(exact - kPi) / kPi, e2 = std::abs(approx - exact) / exact;
  const double e3 = std::abs(smooth - kPi) / kPi;
  return {e1 <= 0.01 && e2 <= 0.01 && e3 <= 1e-6,
          fmt("exact %.10f (rel %.2g), approx rel to exact %.2g, smooth quadrature %.10f", exact, e1, e2, smooth)};
}

// 3. sphere point limit of the normalized smooth measure
Outcome point_limit() {
  const ParametricSurface sphere = make_sphere(1.0);
  const Vec2 uv(0.7, 0.4);
  const Vec3 m = sphere.position(uv.x(), uv.y()), n = sphere.normal(uv.x(), uv.y());
  std::vector<double> errs, kernel;
  std::string triples;
  for (double r : {0.2, 0.1, 0.05}) {
    QuadratureOptions o;
    o.tol = 1e-7;
    const SmoothMeasure sm = smooth_measure(sphere, {m, r}, o);
    QuadraticForm3 q = sm.form;
    q *= 1.0 / sm.area;
    const EigenData e = eigendecompose(q);
    errs.push_back(std::max({std::abs(e.values[0] - 1.0), std::abs(e.values[1] - 1.0), std::abs(e.values[2])}));
    kernel.push_back(std::acos(std::min(1.0, std::abs(e.vector(2).dot(n)))) * kDeg);
    triples += fmt(" (%.5f, %.5f, %.5f)", e.values[0], e.values[1], e.values[2]);
  }
  const bool mono = errs[1] < errs[0] && errs[2] < errs[1];
  const double kmax = *std::max_element(kernel.begin(), kernel.end());
  return {mono && errs.back() <= 0.05 && kmax <= 1.0,
          fmt("eigenvalues at r = 0.2/0.1/0.05:%s; errors %s; kernel-normal angle max %.2g deg", triples.c_str(),
              join(errs).c_str(), kmax)};
}

struct ScheduleResult {
  std::vector<double> fat, rmax, dtilde, phi;
};

// Probe-wise comparison of discrete and smooth measures over a resolution
// schedule, as in the convergence subcommand.
ScheduleResult run_schedule(const std::string& surface_spec, const std::vector<int>& res, double radius,
                            int probes, double quad_tol) {
  const cli::SurfaceSpec spec = cli::parse_surface_spec(surface_spec);
  const ParametricSurface surface = cli::make_reference(spec);
  const auto pts = cli::probe_points(spec, surface, res.front(), probes);
  ScheduleResult out;
  std::vector<QuadraticForm3> smooth;
  for (const Vec2& p : pts) smooth.push_back(smooth_form(surface, {surface.position(p.x(), p.y()), radius}, quad_tol));
  for (int n : res) {
    const TriangleMesh mesh = cli::schedule_mesh(spec, n, GridPattern::Crisscross);
    const MeshQuality q = fatness(mesh);
    const FormAssembler assembler(build_edges(mesh).interior);
    double dmax = 0.0, emax = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const QuadraticForm3 qp = assembler.assemble({surface.position(pts[k].x(), pts[k].y()), radius});
      dmax = std::max(dmax, cone_distance(qp, smooth[k]).value);
      const auto l = eigendecompose(qp + (-smooth[k])).values;
      emax = std::max({emax, std::abs(l[0]), std::abs(l[2])});
    }
    out.fat.push_back(q.fatness);
    out.rmax.push_back(q.max_circumradius);
    out.dtilde.push_back(dmax);
    out.phi.push_back(emax);
  }
  return out;
}

const ScheduleResult& catenoid_schedule() {
  static const ScheduleResult r = run_schedule("catenoid", {16, 32, 64, 128}, 0.25, 10, 1e-7);
  return r;
}

constexpr double kFatnessBound = 0.05;

// 4. cone convergence on fat catenoid meshes
Outcome convergence() {
  const ScheduleResult& r = catenoid_schedule();
  const double fmin = *std::min_element(r.fat.begin(), r.fat.end());
  const bool ok = fmin >= kFatnessBound && non_increasing_tail(r.dtilde) && r.dtilde.back() <= 0.05;
  return {ok, fmt("d~ at 16/32/64/128: %s; min fatness %.4f (bound %.2f)", join(r.dtilde).c_str(), fmin,
                  kFatnessBound)};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

// 5. measure error against max circumradius
Outcome approximation_rate() {
  const ScheduleResult& r = catenoid_schedule();
  const double slope = loglog_slope(r.rmax, r.phi);
  return {slope >= 0.9, fmt("max |Phi_P - Phi_W| %s against max r(t) %s; slope %.3f", join(r.phi).c_str(),
                            join(r.rmax).c_str(), slope)};
}

struct ErStats {
  std::vector<double> er;  // non-elliptic interior vertices
  std::vector<double> normal_dev;
  std::size_t interior = 0, skipped = 0;
  double fat = 0.0;
};

ErStats compare_directions(const ParametricSurface& surface, const TriangleMesh& mesh, double radius, PlaneMode mode) {
  const CrossField field = build_cross_field(mesh, radius, mode, &surface);
  const DeviationStats dev = angular_deviation(mesh, surface);
  const auto interior = vertices_away_from_boundary(mesh, radius);
  ErStats s;
  s.fat = fatness(mesh).fatness;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    if (!interior[v]) continue;
    ++s.interior;
    s.normal_dev.push_back(dev.vertex_mean_normal_deg[v]);
    const DirectionPair ref = asymptotic_directions(surface, mesh.chart_tags()[v]);
    if (ref.kind != PairKind::Two || field.pairs[v].kind != PairKind::Two) {
      ++s.skipped;
      continue;
    }
    s.er.push_back(direction_error(ref, field.pairs[v]) * kDeg);
  }
  return s;
}

// 6. Enneper direction error under refinement
Outcome enneper() {
  const ParametricSurface surface = make_enneper();
  std::vector<double> maxer, fat;
  for (int n : {16, 32, 64, 128}) {
    const ErStats s = compare_directions(surface, inscribe_mesh(surface, n, n), 0.25, PlaneMode::Smooth);
    maxer.push_back(s.er.empty() ? 90.0 : *std::max_element(s.er.begin(), s.er.end()));
    fat.push_back(s.fat);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < maxer.size(); ++i) decreasing = decreasing && maxer[i] < maxer[i - 1];
  const double fmin = *std::min_element(fat.begin(), fat.end());
  return {decreasing && maxer.back() <= 5.0 && fmin >= kFatnessBound,
          fmt("max er (deg) at 16/32/64/128: %s; min fatness %.4f", join(maxer).c_str(), fmin)};
}

double share_at_most(const std::vector<double>& v, double limit) {
  return fraction(static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [=](double x) { return x <= limit; })),
                  v.size());
}

// 7. B-spline graph, 80 x 80 crisscross
Outcome bspline() {
  const ParametricSurface surface = make_bspline_graph(bspline_net());
  const TriangleMesh mesh = inscribe_mesh(surface, 80, 80);
  const ErStats s = compare_directions(surface, mesh, 3.0 * mesh.mean_edge_length(), PlaneMode::Smooth);
  const double normal_ok = share_at_most(s.normal_dev, 0.5), er_ok = share_at_most(s.er, 5.0);
  const double nmax = *std::max_element(s.normal_dev.begin(), s.normal_dev.end());
  return {normal_ok >= 0.99 && er_ok >= 0.95,
          fmt("normal deviation <= 0.5 deg at %.2f%% (max %.3f deg); er <= 5 deg at %.2f%% of %zu non-elliptic "
              "vertices (%zu elliptic skipped)",
              100 * normal_ok, nmax, 100 * er_ok, s.er.size(), s.skipped)};
}

double orthogonality_share(const TriangleMesh& mesh, std::size_t* count) {
  const CrossField field = build_cross_field(mesh, 3.0 * mesh.mean_edge_length(), PlaneMode::Face);
  const auto interior = vertices_away_from_boundary(mesh, field.radius);
  std::size_t n = 0, good = 0;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    if (!interior[v]) continue;
    ++n;
    const DirectionPair& p = field.pairs[v];
    if (p.kind != PairKind::Two) continue;
    const double off = std::abs(90.0 - std::acos(std::min(1.0, std::abs(p.dirs[0].dot(p.dirs[1])))) * kDeg);
    good += off <= 3.0;
  }
  *count = n;
  return fraction(good, n);
}

// 8. catenoid direction pairs are orthogonal
Outcome catenoid_orthogonality() {
  const cli::SurfaceSpec spec = cli::parse_surface_spec("catenoid");
  std::size_t n = 0, n_square = 0;
  const double share = orthogonality_share(cli::schedule_mesh(spec, 128, GridPattern::Crisscross), &n);
  const double square = orthogonality_share(inscribe_mesh(make_catenoid(), 128, 128), &n_square);
  return {share >= 0.95, fmt("within 3 deg at %.2f%% of %zu interior vertices on the %dx128 grid "
                             "(%.2f%% on a 128x128 grid)",
                             100 * share, n, 128 * cli::chart_aspect(spec), 100 * square)};
}

// 9. negative controls
Outcome negative_controls() {
  const TriangleMesh flat = make_flat_grid(1.0, 16);
  const CrossField ff = build_cross_field(flat, 0.3, PlaneMode::Face);
  const bool flat_zero =
      std::all_of(ff.forms.begin(), ff.forms.end(), [](const QuadraticForm3& q) { return q.is_zero(); });

  const TriangleMesh ico = make_icosphere(1.0, 4);
  const CrossField fi = build_cross_field(ico, 3.0 * ico.mean_edge_length(), PlaneMode::Face);
  const auto genuine = std::count_if(fi.classes.begin(), fi.classes.end(),
                                     [](const ConeClassification& c) { return c.kind == ConeClass::GenuineCone; });

  const ScheduleResult lan = run_schedule("lantern", {4, 8, 16, 32}, 0.25, 10, 1e-7);
  const bool criterion4 = non_increasing_tail(lan.dtilde) && lan.dtilde.back() <= 0.05;

  return {flat_zero && genuine == 0 && !criterion4,
          fmt("flat forms all zero: %s; icosphere GenuineCone vertices: %ld; lantern (slices = sectors^2) d~ at "
              "4/8/16/32: %s, fatness %s, convergence check %s",
              flat_zero ? "yes" : "no", static_cast<long>(genuine), join(lan.dtilde).c_str(),
              join(lan.fat, "%.2g").c_str(), criterion4 ? "passes" : "fails")};
}

#ifndef ASYMCONE_TOOL
#define ASYMCONE_TOOL "asymcone"
#endif

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 10. invariance, additivity, orientation and CLI determinism
Outcome determinism() {
  const TriangleMesh mesh = inscribe_mesh(make_catenoid(), 60, 20);
  const auto edges = build_edges(mesh).interior;

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const Mat3 r = Eigen::Quaterniond(g(rng), g(rng), g(rng), g(rng)).normalized().toRotationMatrix();
  const Vec3 t(g(rng), g(rng), g(rng));
  std::vector<Vec3> moved;
  for (const Vec3& p : mesh.vertices()) moved.push_back(r * p + t);
  const auto edges_moved = build_edges(mesh.with_vertices(moved)).interior;
  const auto edges_flipped = build_edges(mesh.flipped()).interior;

  double rigid = 0.0;
  bool additive = true, flip = true;
  for (int v = 0; v < static_cast<int>(mesh.num_vertices()); v += 13) {
    const BorelBall b{mesh.vertex(v), 0.35};
    const QuadraticForm3 q = assemble_form(edges, b);
    const QuadraticForm3 qm = assemble_form(edges_moved, {r * b.center + t, b.radius});
    const QuadraticForm3 back = QuadraticForm3::from_matrix(r.transpose() * qm.matrix() * r);
    rigid = std::max(rigid, (back + (-q)).norm() / q.norm());
    flip = flip && assemble_form(edges_flipped, b) == -q;

    const BorelBall far{-mesh.vertex(v), 0.35};
    std::set<int> ca, cb;
    for (const auto& c : edge_contributions(edges, b)) ca.insert(c.edge);
    for (const auto& c : edge_contributions(edges, far)) cb.insert(c.edge);
    const bool disjoint = std::none_of(ca.begin(), ca.end(), [&](int e) { return cb.count(e) > 0; });
    if (!disjoint) continue;
    const std::vector<BorelBall> both{b, far};
    additive = additive && assemble_form(edges, std::span<const BorelBall>(both)) == q + assemble_form(edges, far);
  }

  const fs::path dir = fs::temp_directory_path() / "asymcone_acceptance_determinism";
  fs::remove_all(dir);
  bool identical = true;
  const std::vector<std::string> runs{
      "cones --surface catenoid --nu 48 --nv 16",
      "lines --surface catenoid --nu 48 --nv 16 --seed-count 8",
      "noise --surface catenoid --nu 48 --nv 16 --seed 3 --format csv",
      "convergence --surface catenoid --resolutions 4,6,8 --probes 3 --radius 0.6",
  };
  std::size_t files = 0;
  for (const std::string& args : runs) {
    for (const char* sub : {"a", "b"}) {
      const std::string cmd = std::string("\"") + ASYMCONE_TOOL + "\" " + args + " --out \"" +
                              (dir / sub).string() + "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) identical = false;
    }
  }
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    ++files;
    identical = identical && slurp(entry.path()) == slurp(dir / "b" / entry.path().filename());
  }
  fs::remove_all(dir);
  return {rigid <= 1e-10 && additive && flip && identical && files > 0,
          fmt("rigid motion rel deviation %.2g; additivity %s; orientation flip %s; %zu CLI outputs byte identical: %s",
              rigid, additive ? "exact" : "violated", flip ? "exact" : "violated", files, identical ? "yes" : "no")};
}

// 11. larger balls smooth out vertex noise
Outcome noise_robustness() {
  struct Case {
    const char* name;
    TriangleMesh mesh;
  };
  const cli::SurfaceSpec cat = cli::parse_surface_spec("catenoid");
  const std::vector<Case> cases{{"catenoid", cli::schedule_mesh(cat, 32, GridPattern::Crisscross)},
                                {"bspline", inscribe_mesh(make_bspline_graph(bspline_net()), 48, 48)}};
  bool all = true;
  std::string detail;
  for (const Case& c : cases) {
    const double scale = 1.0 / c.mesh.mean_edge_length();
    std::vector<Vec3> pts;
    for (const Vec3& p : c.mesh.vertices()) pts.push_back(scale * p);
    const TriangleMesh mesh = c.mesh.with_vertices(pts);
    const CrossField clean = build_cross_field(mesh, 3.0, PlaneMode::Face);
    const auto interior = vertices_away_from_boundary(mesh, 6.0);
    std::vector<double> m3, m6;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const TriangleMesh noisy = perturb_vertices(mesh, 0.1, seed);
      const CrossField r3 = build_cross_field(noisy, 3.0, PlaneMode::Face);
      const CrossField r6 = build_cross_field(noisy, 6.0, PlaneMode::Face);
      std::vector<double> d3, d6;
      for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        if (!interior[v] || clean.pairs[v].kind != PairKind::Two || r3.pairs[v].kind != PairKind::Two ||
            r6.pairs[v].kind != PairKind::Two)
          continue;
        d3.push_back(direction_error(clean.pairs[v], r3.pairs[v]) * kDeg);
        d6.push_back(direction_error(clean.pairs[v], r6.pairs[v]) * kDeg);
      }
      const auto median = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
        return v[v.size() / 2];
      };
      m3.push_back(d3.empty() ? 0.0 : median(d3));
      m6.push_back(d6.empty() ? 0.0 : median(d6));
      all = all && !d3.empty() && m6.back() < m3.back();
    }
    detail += fmt("%s%s median deviation R=3 %s deg, R=6 %s deg", detail.empty() ? "" : "; ", c.name,
                  join(m3, "%.3g").c_str(), join(m6, "%.3g").c_str());
  }
  return {all, detail + " (seeds 1/2/3)"};
}

} // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"wedge-oracle equivalence", wedge_oracle_equivalence},
      {"cylinder limit", cylinder_limit},
      {"point limit", point_limit},
      {"cone convergence", convergence},
      {"approximation rate", approximation_rate},
      {"Enneper direction error", enneper},
      {"B-spline experiment", bspline},
      {"catenoid orthogonality", catenoid_orthogonality},
      {"negative controls", negative_controls},
      {"determinism and invariance", determinism},
      {"noise robustness", noise_robustness},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[i].first << ": " << o.detail
              << fmt(" (%.1f s)", seconds_since(t0)) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
