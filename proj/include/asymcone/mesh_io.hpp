#pragma once

#include "asymcone/mesh.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace asymcone {

enum class MeshFormat { OBJ, OFF, PLY };

/// Reads a triangle mesh. Vertex and face order follow the file.
/// Throws ParseError (with the offending line), TopologyError or
/// OrientationError. Closed meshes must have positive signed volume.
TriangleMesh load_mesh(std::istream& in, MeshFormat format);
TriangleMesh load_mesh_file(const std::filesystem::path& path);

/// Format from a file extension (".obj", ".off", ".ply"); throws ParseError.
MeshFormat format_from_extension(const std::filesystem::path& path);

void write_off(std::ostream& out, const TriangleMesh& mesh);
void write_obj(std::ostream& out, const TriangleMesh& mesh);
void write_mesh_file(const std::filesystem::path& path, const TriangleMesh& mesh);

/// Decimal text with 17 significant digits ("%.17g").
std::string fmt17(double v);

/// Counts, fatness, mean edge length and max circumradius.
nlohmann::ordered_json mesh_stats_json(const TriangleMesh& mesh);

} // namespace asymcone
