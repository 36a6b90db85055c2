#include "plembed/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace plembed {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Stream tokenizer that skips blank lines and '#' comments.
class TokenReader {
 public:
  TokenReader(std::istream& in, std::string name)
      : in_(in), name_(std::move(name)) {}

  std::string next() {
    std::string tok;
    while (true) {
      if (!(in_ >> tok)) throw ParseError(name_ + ": unexpected end of file");
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in_, rest);
        continue;
      }
      return tok;
    }
  }

  long next_int(const char* what) {
    std::string tok = next();
    try {
      size_t pos = 0;
      long v = std::stol(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(name_ + ": expected " + std::string(what) + ", got '" +
                       tok + "'");
    }
  }

  double next_double(const char* what) {
    std::string tok = next();
    try {
      size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(name_ + ": expected " + std::string(what) + ", got '" +
                       tok + "'");
    }
  }

  void skip_line() {
    std::string rest;
    std::getline(in_, rest);
  }

 private:
  std::istream& in_;
  std::string name_;
};

EmbeddedMesh read_off(std::istream& in, const std::string& name) {
  TokenReader tr(in, name);
  std::string magic = tr.next();
  if (magic != "OFF")
    throw ParseError(name + ": not an OFF file (header '" + magic + "')");
  long nv = tr.next_int("vertex count");
  long nf = tr.next_int("face count");
  tr.next_int("edge count");  // conventionally present, value ignored
  if (nv <= 0 || nf <= 0)
    throw ParseError(name + ": OFF needs positive vertex and face counts");
  Eigen::MatrixXd coords(nv, 3);
  for (long v = 0; v < nv; ++v)
    for (int k = 0; k < 3; ++k) coords(v, k) = tr.next_double("coordinate");
  std::vector<Face> faces(nf);
  for (long f = 0; f < nf; ++f) {
    long arity = tr.next_int("face arity");
    if (arity != 3)
      throw ParseError(name + ": face " + std::to_string(f) + " has " +
                       std::to_string(arity) +
                       " vertices; only triangles are supported");
    for (int k = 0; k < 3; ++k) {
      long idx = tr.next_int("vertex index");
      if (idx < 0 || idx >= nv)
        throw ParseError(name + ": face " + std::to_string(f) +
                         " references missing vertex " + std::to_string(idx));
      faces[f][k] = static_cast<int>(idx);
    }
    tr.skip_line();  // optional per-face color fields
  }
  return EmbeddedMesh(std::move(coords), std::move(faces));
}

EmbeddedMesh read_obj(std::istream& in, const std::string& name) {
  std::vector<std::array<double, 3>> verts;
  std::vector<Face> faces;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "v") {
      std::array<double, 3> p;
      if (!(ls >> p[0] >> p[1] >> p[2]))
        throw ParseError(name + ":" + std::to_string(lineno) +
                         ": malformed vertex record");
      verts.push_back(p);
    } else if (kw == "f") {
      std::vector<long> idx;
      std::string ref;
      while (ls >> ref) {
        // "i", "i/t", "i/t/n", "i//n": the vertex index leads.
        size_t pos = 0;
        long v;
        try {
          v = std::stol(ref, &pos);
        } catch (const std::exception&) {
          throw ParseError(name + ":" + std::to_string(lineno) +
                           ": malformed face reference '" + ref + "'");
        }
        if (pos != ref.size() && ref[pos] != '/')
          throw ParseError(name + ":" + std::to_string(lineno) +
                           ": malformed face reference '" + ref + "'");
        if (v <= 0 || v > static_cast<long>(verts.size()))
          throw ParseError(name + ":" + std::to_string(lineno) +
                           ": face references missing vertex " +
                           std::to_string(v));
        idx.push_back(v - 1);
      }
      if (idx.size() != 3)
        throw ParseError(name + ":" + std::to_string(lineno) + ": face has " +
                         std::to_string(idx.size()) +
                         " vertices; only triangles are supported");
      faces.push_back({static_cast<int>(idx[0]), static_cast<int>(idx[1]),
                       static_cast<int>(idx[2])});
    }
    // vn / vt / o / g / s / usemtl / mtllib are skipped.
  }
  if (verts.empty() || faces.empty())
    throw ParseError(name + ": OBJ contains no triangles");
  Eigen::MatrixXd coords(verts.size(), 3);
  for (size_t v = 0; v < verts.size(); ++v)
    for (int k = 0; k < 3; ++k) coords(v, k) = verts[v][k];
  return EmbeddedMesh(std::move(coords), std::move(faces));
}

}  // namespace

MeshFormat format_from_path(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == "off") return MeshFormat::OFF;
  if (ext == "obj") return MeshFormat::OBJ;
  throw ParseError(path + ": unknown mesh extension '." + ext +
                   "' (expected .off or .obj)");
}

EmbeddedMesh load_mesh(const std::string& path) {
  return load_mesh(path, format_from_path(path));
}

EmbeddedMesh load_mesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return read_mesh(in, format, path);
}

EmbeddedMesh read_mesh(std::istream& in, MeshFormat format,
                       const std::string& name) {
  return format == MeshFormat::OFF ? read_off(in, name) : read_obj(in, name);
}

void save_mesh(const EmbeddedMesh& mesh, const std::string& path) {
  save_mesh(mesh, path, format_from_path(path));
}

void save_mesh(const EmbeddedMesh& mesh, const std::string& path,
               MeshFormat format) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  write_mesh(mesh, out, format);
}

void write_mesh(const EmbeddedMesh& mesh, std::ostream& out,
                MeshFormat format) {
  if (mesh.dimension() != 3)
    throw ValidationError("mesh files carry 3-d coordinates; mesh has dimension " +
                          std::to_string(mesh.dimension()));
  const Eigen::MatrixXd& c = mesh.coords();
  if (format == MeshFormat::OFF) {
    out << "OFF\n"
        << mesh.vertex_count() << ' ' << mesh.faces().size() << " 0\n";
    for (int v = 0; v < mesh.vertex_count(); ++v)
      out << fmt17(c(v, 0)) << ' ' << fmt17(c(v, 1)) << ' ' << fmt17(c(v, 2))
          << '\n';
    for (const Face& f : mesh.faces())
      out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  } else {
    for (int v = 0; v < mesh.vertex_count(); ++v)
      out << "v " << fmt17(c(v, 0)) << ' ' << fmt17(c(v, 1)) << ' '
          << fmt17(c(v, 2)) << '\n';
    for (const Face& f : mesh.faces())
      out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

}  // namespace plembed
