#pragma once

#include <iosfwd>
#include <string>

#include "plembed/mesh.hpp"

namespace plembed {

enum class MeshFormat { OFF, OBJ };

// Pick the format from the file extension (.off / .obj, case-insensitive).
MeshFormat format_from_path(const std::string& path);

// ASCII OFF is the canonical interchange format; OBJ is accepted for
// interoperability (only v/f records are honoured, normals and texture
// records are skipped, faces must be triangles).
EmbeddedMesh load_mesh(const std::string& path);
EmbeddedMesh load_mesh(const std::string& path, MeshFormat format);
EmbeddedMesh read_mesh(std::istream& in, MeshFormat format,
                       const std::string& name);

// Coordinates are written with 17 significant digits, so text round-trips
// reproduce them bit-exactly.
void save_mesh(const EmbeddedMesh& mesh, const std::string& path);
void save_mesh(const EmbeddedMesh& mesh, const std::string& path,
               MeshFormat format);
void write_mesh(const EmbeddedMesh& mesh, std::ostream& out, MeshFormat format);

}  // namespace plembed
