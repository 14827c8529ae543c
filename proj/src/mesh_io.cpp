#include "asymcone/mesh_io.hpp"

#include "asymcone/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace asymcone {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

double to_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
  return v;
}

long to_long(std::string_view tok, std::size_t line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line);
  return v;
}

std::string non_triangle(std::size_t n) {
  return "face with " + std::to_string(n) + " vertices; only triangles are supported";
}

TriangleMesh finish(std::vector<Vec3> verts, std::vector<Face> faces) {
  TriangleMesh mesh(std::move(verts), std::move(faces));
  if (mesh.is_closed() && mesh.signed_volume() <= 0.0)
    throw OrientationError("closed mesh has non-positive signed volume; faces must wind "
                           "counter-clockwise seen from outside");
  return mesh;
}

TriangleMesh read_obj(std::istream& in) {
  std::vector<Vec3> verts;
  std::vector<Face> faces;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] == "v") {
      if (toks.size() < 4) throw ParseError("vertex record needs 3 coordinates", lineno);
      verts.emplace_back(to_double(toks[1], lineno), to_double(toks[2], lineno),
                         to_double(toks[3], lineno));
    } else if (toks[0] == "f") {
      const std::size_t n = toks.size() - 1;
      if (n != 3) throw ParseError(non_triangle(n), lineno);
      Face f{};
      for (std::size_t k = 0; k < 3; ++k) {
        const std::string_view tok = toks[k + 1];
        const long idx = to_long(tok.substr(0, tok.find('/')), lineno);
        long resolved = idx > 0 ? idx - 1 : static_cast<long>(verts.size()) + idx;
        if (idx == 0 || resolved < 0 || resolved >= static_cast<long>(verts.size()))
          throw ParseError("face index " + std::to_string(idx) + " out of range", lineno);
        f[k] = static_cast<int>(resolved);
      }
      faces.push_back(f);
    }
    // vt, vn, g, o, s, usemtl, mtllib and other records carry no geometry we use.
  }
  return finish(std::move(verts), std::move(faces));
}

// Yields the non-empty, comment-stripped lines of a stream with line numbers.
class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& toks) {
    while (std::getline(in_, raw_)) {
      ++lineno_;
      toks = split_ws(strip_comment(raw_));
      if (!toks.empty()) return true;
    }
    return false;
  }
  std::size_t line() const { return lineno_; }

private:
  std::istream& in_;
  std::string raw_;
  std::size_t lineno_ = 0;
};

TriangleMesh read_off(std::istream& in) {
  LineReader rd(in);
  std::vector<std::string_view> toks;
  if (!rd.next(toks)) throw ParseError("empty OFF stream", 0);
  std::size_t first = 0;
  if (toks[0] == "OFF") {
    first = 1;
  } else if (toks[0].size() > 3 && toks[0].substr(toks[0].size() - 3) == "OFF") {
    throw ParseError("unsupported OFF variant '" + std::string(toks[0]) + "'", rd.line());
  } else {
    throw ParseError("missing OFF header", rd.line());
  }
  if (toks.size() == first) {
    if (!rd.next(toks)) throw ParseError("missing OFF counts", rd.line());
    first = 0;
  }
  if (toks.size() < first + 2) throw ParseError("OFF counts need vertex and face numbers", rd.line());
  const long nv = to_long(toks[first], rd.line());
  const long nf = to_long(toks[first + 1], rd.line());
  if (nv < 0 || nf < 0) throw ParseError("negative element count", rd.line());

  std::vector<Vec3> verts;
  verts.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!rd.next(toks)) throw ParseError("unexpected end of file in vertex list", rd.line());
    if (toks.size() < 3) throw ParseError("vertex record needs 3 coordinates", rd.line());
    verts.emplace_back(to_double(toks[0], rd.line()), to_double(toks[1], rd.line()),
                       to_double(toks[2], rd.line()));
  }
  std::vector<Face> faces;
  faces.reserve(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    if (!rd.next(toks)) throw ParseError("unexpected end of file in face list", rd.line());
    const long n = to_long(toks[0], rd.line());
    if (n != 3) throw ParseError(non_triangle(static_cast<std::size_t>(std::max(n, 0L))), rd.line());
    if (toks.size() < 4) throw ParseError("face record is truncated", rd.line());
    Face f{};
    for (std::size_t k = 0; k < 3; ++k) {
      const long idx = to_long(toks[k + 1], rd.line());
      if (idx < 0 || idx >= nv) throw ParseError("face index " + std::to_string(idx) + " out of range", rd.line());
      f[k] = static_cast<int>(idx);
    }
    faces.push_back(f);
  }
  return finish(std::move(verts), std::move(faces));
}

struct PlyProperty {
  std::string name;
  bool is_list = false;
};

struct PlyElement {
  std::string name;
  long count = 0;
  std::vector<PlyProperty> props;
};

TriangleMesh read_ply(std::istream& in) {
  LineReader rd(in);
  std::vector<std::string_view> toks;
  if (!rd.next(toks) || toks[0] != "ply") throw ParseError("missing 'ply' magic", rd.line());

  std::vector<PlyElement> elements;
  bool header_done = false;
  while (rd.next(toks)) {
    if (toks[0] == "comment" || toks[0] == "obj_info") continue;
    if (toks[0] == "format") {
      if (toks.size() < 2 || toks[1] != "ascii")
        throw ParseError("only ascii PLY is supported", rd.line());
    } else if (toks[0] == "element") {
      if (toks.size() < 3) throw ParseError("malformed element line", rd.line());
      elements.push_back({std::string(toks[1]), to_long(toks[2], rd.line()), {}});
      if (elements.back().count < 0) throw ParseError("negative element count", rd.line());
    } else if (toks[0] == "property") {
      if (elements.empty()) throw ParseError("property before any element", rd.line());
      if (toks.size() >= 5 && toks[1] == "list")
        elements.back().props.push_back({std::string(toks[4]), true});
      else if (toks.size() >= 3)
        elements.back().props.push_back({std::string(toks[2]), false});
      else
        throw ParseError("malformed property line", rd.line());
    } else if (toks[0] == "end_header") {
      header_done = true;
      break;
    } else {
      throw ParseError("unknown header keyword '" + std::string(toks[0]) + "'", rd.line());
    }
  }
  if (!header_done) throw ParseError("missing end_header", rd.line());

  std::vector<Vec3> verts;
  std::vector<Face> faces;
  for (const PlyElement& el : elements) {
    int ix = -1, iy = -1, iz = -1, ilist = -1;
    for (std::size_t p = 0; p < el.props.size(); ++p) {
      const auto& pr = el.props[p];
      if (!pr.is_list && pr.name == "x") ix = static_cast<int>(p);
      if (!pr.is_list && pr.name == "y") iy = static_cast<int>(p);
      if (!pr.is_list && pr.name == "z") iz = static_cast<int>(p);
      if (pr.is_list && (pr.name == "vertex_indices" || pr.name == "vertex_index")) ilist = static_cast<int>(p);
    }
    if (el.name == "vertex" && (ix < 0 || iy < 0 || iz < 0))
      throw ParseError("vertex element lacks x, y, z properties", 0);
    if (el.name == "face" && ilist < 0)
      throw ParseError("face element lacks a vertex_indices list", 0);

    for (long i = 0; i < el.count; ++i) {
      if (!rd.next(toks)) throw ParseError("unexpected end of file in element '" + el.name + "'", rd.line());
      std::size_t pos = 0;
      std::array<double, 3> xyz{};
      Face f{};
      for (std::size_t p = 0; p < el.props.size(); ++p) {
        if (pos >= toks.size()) throw ParseError("record is truncated", rd.line());
        if (el.props[p].is_list) {
          const long n = to_long(toks[pos++], rd.line());
          if (n < 0 || pos + static_cast<std::size_t>(n) > toks.size())
            throw ParseError("list property is truncated", rd.line());
          if (static_cast<int>(p) == ilist && el.name == "face") {
            if (n != 3) throw ParseError(non_triangle(static_cast<std::size_t>(n)), rd.line());
            for (std::size_t k = 0; k < 3; ++k) {
              const long idx = to_long(toks[pos + k], rd.line());
              if (idx < 0 || idx >= static_cast<long>(verts.size()))
                throw ParseError("face index " + std::to_string(idx) + " out of range", rd.line());
              f[k] = static_cast<int>(idx);
            }
          }
          pos += static_cast<std::size_t>(n);
        } else {
          const double v = to_double(toks[pos++], rd.line());
          if (static_cast<int>(p) == ix) xyz[0] = v;
          if (static_cast<int>(p) == iy) xyz[1] = v;
          if (static_cast<int>(p) == iz) xyz[2] = v;
        }
      }
      if (el.name == "vertex") verts.emplace_back(xyz[0], xyz[1], xyz[2]);
      if (el.name == "face") faces.push_back(f);
    }
  }
  return finish(std::move(verts), std::move(faces));
}

} // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TriangleMesh load_mesh(std::istream& in, MeshFormat format) {
  switch (format) {
  case MeshFormat::OBJ: return read_obj(in);
  case MeshFormat::OFF: return read_off(in);
  case MeshFormat::PLY: return read_ply(in);
  }
  throw ParseError("unknown mesh format", 0);
}

MeshFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".obj") return MeshFormat::OBJ;
  if (ext == ".off") return MeshFormat::OFF;
  if (ext == ".ply") return MeshFormat::PLY;
  throw ParseError("cannot infer mesh format from '" + path.string() + "'", 0);
}

TriangleMesh load_mesh_file(const std::filesystem::path& path) {
  const MeshFormat fmt = format_from_extension(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return load_mesh(in, fmt);
}

void write_off(std::ostream& out, const TriangleMesh& mesh) {
  out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << " 0\n";
  for (const Vec3& p : mesh.vertices())
    out << fmt17(p.x()) << ' ' << fmt17(p.y()) << ' ' << fmt17(p.z()) << '\n';
  for (const Face& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
  for (const Vec3& p : mesh.vertices())
    out << "v " << fmt17(p.x()) << ' ' << fmt17(p.y()) << ' ' << fmt17(p.z()) << '\n';
  for (const Face& f : mesh.faces())
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_mesh_file(const std::filesystem::path& path, const TriangleMesh& mesh) {
  const MeshFormat fmt = format_from_extension(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'", 0);
  if (fmt == MeshFormat::OFF)
    write_off(out, mesh);
  else if (fmt == MeshFormat::OBJ)
    write_obj(out, mesh);
  else
    throw ParseError("mesh export supports OFF and OBJ only", 0);
}

nlohmann::ordered_json mesh_stats_json(const TriangleMesh& mesh) {
  const MeshQuality q = fatness(mesh);
  nlohmann::ordered_json j;
  j["vertices"] = mesh.num_vertices();
  j["edges"] = mesh.num_edges();
  j["faces"] = mesh.num_faces();
  j["closed"] = mesh.is_closed();
  j["fatness"] = q.fatness;
  j["mean_edge_length"] = q.mean_edge_length;
  j["max_circumradius"] = q.max_circumradius;
  return j;
}

} // namespace asymcone
