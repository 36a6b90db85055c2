#include <algorithm>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plembed/bz.hpp"
#include "plembed/curvature.hpp"
#include "plembed/errors.hpp"
#include "plembed/fold.hpp"
#include "plembed/io.hpp"
#include "plembed/kuratowski.hpp"
#include "plembed/mesh.hpp"
#include "plembed/metric.hpp"
#include "plembed/qc.hpp"
#include "plembed/report.hpp"
#include "plembed/rng.hpp"

namespace {

using plembed::Report;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw plembed::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Print the report and mirror it byte-for-byte into --out when given.
void emit(const Report& rep, const std::string& out_path) {
  const std::string text = rep.text();
  std::fwrite(text.data(), 1, text.size(), stdout);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw plembed::ParseError("cannot write '" + out_path + "'");
    out << text;
  }
}

std::uint64_t global_seed() {
  const char* env = std::getenv("PLEMBED_SEED");
  if (!env || !*env) return plembed::kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || errno != 0)
    throw plembed::ParseError("PLEMBED_SEED must be a decimal integer");
  return v;
}

std::vector<double> parse_number_list(const std::string& text, bool angles) {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (angles) {
      out.push_back(plembed::parse_angle(item));
    } else {
      const char* begin = item.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin || static_cast<size_t>(end - begin) != item.size())
        throw plembed::ParseError("bad number '" + item + "' in '" + text + "'");
      out.push_back(v);
    }
  }
  if (out.empty()) throw plembed::ParseError("empty number list");
  return out;
}

void add_topology(Report& rep, const plembed::PLSurface& s) {
  const auto t = s.topology_report();
  rep.add("vertices", t.vertex_count);
  rep.add("edges", t.edge_count);
  rep.add("faces", t.face_count);
  rep.add("euler_characteristic", t.euler_characteristic);
  rep.add("orientable", t.orientable);
  rep.add("closed", s.closed());
  rep.add("boundary_components", t.boundary_component_count);
}

// K keys carry a _bound suffix when the value only bounds the quantity.
void add_dilatation(Report& rep, const plembed::DilatationReport& r) {
  rep.add("kind", plembed::to_string(r.kind));
  switch (r.kind) {
    case plembed::DilatationKind::PointwiseNumeric:
    case plembed::DilatationKind::ClosedFormMap:
      rep.add("K_I", r.inner);
      rep.add("K_O", r.outer);
      rep.add("K", r.maximal);
      break;
    case plembed::DilatationKind::CoefficientOfDomain:
      rep.add("K_I", r.inner);
      rep.add("K_O_bound", r.outer);
      rep.add("K", r.maximal);
      break;
    case plembed::DilatationKind::LowerBound:
      rep.add("K_I_bound", r.inner);
      rep.add("K_O_bound", r.outer);
      rep.add("K_bound", r.maximal);
      break;
  }
  if (!r.note.empty()) rep.add("note", r.note);
}

struct MeshArgs {
  std::string path;
  std::string out;
};

int run_validate(const MeshArgs& a) {
  const std::string bytes = slurp(a.path);
  const plembed::EmbeddedMesh m = plembed::load_mesh(a.path);
  Report rep;
  rep.add("command", "validate");
  rep.add("mesh", a.path);
  rep.add("input_digest", plembed::fnv1a_hex(bytes));
  rep.add("dimension", m.dimension());
  add_topology(rep, m.surface());
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

int run_curvature(const MeshArgs& a) {
  const std::string bytes = slurp(a.path);
  const plembed::EmbeddedMesh m = plembed::load_mesh(a.path);
  const plembed::PLSurface& s = m.surface();
  Report rep;
  rep.add("command", "curvature");
  rep.add("mesh", a.path);
  rep.add("input_digest", plembed::fnv1a_hex(bytes));
  add_topology(rep, s);

  const bool with_dihedrals = m.dimension() == 3 && s.orientable();
  const plembed::CurvatureReport cr =
      with_dihedrals ? plembed::dihedral_data(m) : plembed::angle_defects(s);
  rep.add("defect_total", cr.defect_total);
  rep.add("two_pi_chi", cr.two_pi_chi);
  rep.add("gauss_bonnet_residual", cr.gauss_bonnet_residual);

  int min_v = -1, max_v = -1;
  double min_d = std::numeric_limits<double>::infinity();
  double max_d = -std::numeric_limits<double>::infinity();
  for (const auto& d : cr.defects) {
    if (d.defect < min_d) { min_d = d.defect; min_v = d.vertex; }
    if (d.defect > max_d) { max_d = d.defect; max_v = d.vertex; }
  }
  rep.add("defect_min", min_d);
  rep.add("defect_min_vertex", min_v);
  rep.add("defect_max", max_d);
  rep.add("defect_max_vertex", max_v);

  if (with_dihedrals) {
    double total = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = -std::numeric_limits<double>::infinity();
    for (const auto& d : cr.dihedrals) {
      total += d.measure;
      dmin = std::min(dmin, d.dihedral);
      dmax = std::max(dmax, d.dihedral);
    }
    rep.add("interior_edges", static_cast<int>(cr.dihedrals.size()));
    rep.add("skipped_boundary_edges",
            static_cast<int>(cr.skipped_boundary_edges.size()));
    rep.add("mean_curvature_total", total);
    if (!cr.dihedrals.empty()) {
      rep.add("dihedral_min", dmin);
      rep.add("dihedral_max", dmax);
    }
  }
  if (s.closed() && m.dimension() == 3) {
    const auto ex = plembed::extremal_vertex_defect_check(m);
    rep.add("extremal_vertex", ex.vertex);
    rep.add("extremal_distance", ex.distance);
    rep.add("extremal_defect", ex.defect);
    rep.add("extremal_pass", ex.pass);
  }
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

struct DistanceArgs {
  MeshArgs mesh;
  int source = 0;
  int refine = 0;
};

int run_distances(const DistanceArgs& a) {
  const std::string bytes = slurp(a.mesh.path);
  const plembed::EmbeddedMesh m = plembed::load_mesh(a.mesh.path);
  const plembed::PLSurface& s = m.surface();
  const plembed::DistanceEngine engine(s, a.refine);
  const plembed::DistanceField f = engine.field_from(a.source);

  Report rep;
  rep.add("command", "distances");
  rep.add("mesh", a.mesh.path);
  rep.add("input_digest", plembed::fnv1a_hex(bytes));
  rep.add("source", a.source);
  rep.add("refine", a.refine);
  rep.add("vertices", s.vertex_count());
  rep.add("graph_nodes", engine.node_count());
  int far_v = -1;
  double far_d = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < s.vertex_count(); ++v) {
    rep.add("distance[" + std::to_string(v) + "]", f.distance[v]);
    if (f.distance[v] > far_d) { far_d = f.distance[v]; far_v = v; }
  }
  rep.add("distance_max", far_d);
  rep.add("distance_max_vertex", far_v);
  rep.add("status", "ok");
  emit(rep, a.mesh.out);
  return 0;
}

struct NetArgs {
  MeshArgs mesh;
  std::optional<double> epsilon;
  std::optional<int> count;
  int refine = 0;
};

int run_net(const NetArgs& a) {
  const std::string bytes = slurp(a.mesh.path);
  const plembed::EmbeddedMesh m = plembed::load_mesh(a.mesh.path);
  const plembed::PLSurface& s = m.surface();
  const plembed::Net net =
      a.epsilon ? plembed::farthest_point_net_epsilon(s, *a.epsilon, a.refine)
                : plembed::farthest_point_net_count(s, *a.count, a.refine);
  Report rep;
  rep.add("command", "net");
  rep.add("mesh", a.mesh.path);
  rep.add("input_digest", plembed::fnv1a_hex(bytes));
  if (a.epsilon) rep.add("epsilon", *a.epsilon);
  if (a.count) rep.add("count", *a.count);
  rep.add("refine", a.refine);
  rep.add("landmark_count", static_cast<int>(net.landmarks.size()));
  rep.add("covering_radius", net.covering_radius);
  for (size_t j = 0; j < net.landmarks.size(); ++j)
    rep.add("landmark[" + std::to_string(j) + "]", net.landmarks[j]);
  rep.add("status", "ok");
  emit(rep, a.mesh.out);
  return 0;
}

struct KuratowskiArgs {
  MeshArgs mesh;
  std::optional<int> landmarks;
  std::optional<double> epsilon;
  int refine = 0;
  bool check_bilipschitz = false;
  int pairs = 10000;
  std::uint64_t seed = plembed::kDefaultSeed;
};

int run_kuratowski(const KuratowskiArgs& a) {
  const std::string bytes = slurp(a.mesh.path);
  const plembed::EmbeddedMesh m = plembed::load_mesh(a.mesh.path);
  const plembed::PLSurface& s = m.surface();
  const plembed::Net net =
      a.epsilon ? plembed::farthest_point_net_epsilon(s, *a.epsilon, a.refine)
                : plembed::farthest_point_net_count(s, *a.landmarks, a.refine);
  const plembed::LandmarkEmbedding emb =
      plembed::kuratowski_embed(s, net, {}, a.refine);

  Report rep;
  rep.add("command", "kuratowski");
  rep.add("mesh", a.mesh.path);
  rep.add("input_digest", plembed::fnv1a_hex(bytes));
  if (a.epsilon) rep.add("epsilon", *a.epsilon);
  if (a.landmarks) rep.add("landmarks", *a.landmarks);
  rep.add("refine", a.refine);
  rep.add("landmark_count", static_cast<int>(emb.landmarks.size()));
  rep.add("covering_radius", net.covering_radius);
  rep.add("points", static_cast<int>(emb.points.size()));
  rep.add("isometry_residual", plembed::verify_isometry_on_landmarks(emb));
  if (a.check_bilipschitz) {
    const plembed::DistanceEngine engine(s, a.refine);
    const auto pair_list =
        plembed::default_pair_sample(emb.points, a.seed, a.pairs);
    const plembed::BiLipschitzReport bl =
        plembed::verify_bilipschitz(emb, pair_list, engine);
    rep.add("seed", std::to_string(a.seed));
    rep.add("pair_count", bl.pair_count);
    rep.add("min_ratio", bl.min_ratio);
    rep.add("max_ratio", bl.max_ratio);
    rep.add("c_achieved", bl.c_achieved);
    rep.add("min_witness_u", bl.min_witness[0]);
    rep.add("min_witness_v", bl.min_witness[1]);
    rep.add("max_witness_u", bl.max_witness[0]);
    rep.add("max_witness_v", bl.max_witness[1]);
    rep.add("skipped_coincident", bl.skipped_coincident);
  }
  rep.add("status", "ok");
  emit(rep, a.mesh.out);
  return 0;
}

struct DilFoldingArgs {
  std::string alpha, beta;
  int dim = 3;
  bool numeric = false;
  std::string out;
  std::uint64_t seed = plembed::kDefaultSeed;
};

int run_dil_folding(const DilFoldingArgs& a) {
  const double alpha = plembed::parse_angle(a.alpha);
  const double beta = plembed::parse_angle(a.beta);
  Report rep;
  rep.add("command", "dilatation");
  rep.add("mode", "folding");
  rep.add("alpha", alpha);
  rep.add("beta", beta);
  rep.add("dim", a.dim);
  rep.add("input_digest", plembed::fnv1a_hex(rep.text()));
  const auto r = plembed::folding_map_dilatation(alpha, beta, a.dim);
  rep.add("c", beta / alpha);
  add_dilatation(rep, r);
  if (a.numeric) {
    const int samples = 32;
    rep.add("samples", samples);
    rep.add("seed", std::to_string(a.seed));
    rep.add("numeric_deviation",
            plembed::folding_numeric_deviation(alpha, beta, a.dim, samples,
                                               a.seed));
  }
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

struct DilWedgeArgs {
  std::string alpha;
  int dim = 3;
  std::string out;
};

int run_dil_wedge(const DilWedgeArgs& a) {
  const double alpha = plembed::parse_angle(a.alpha);
  Report rep;
  rep.add("command", "dilatation");
  rep.add("mode", "wedge");
  rep.add("alpha", alpha);
  rep.add("dim", a.dim);
  rep.add("input_digest", plembed::fnv1a_hex(rep.text()));
  add_dilatation(rep, plembed::wedge_coefficients(plembed::Wedge(alpha, a.dim)));
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

struct DilDihedralArgs {
  std::string angles;
  int dim = 3;
  std::string out;
};

int run_dil_dihedral(const DilDihedralArgs& a) {
  const std::vector<double> angles = parse_number_list(a.angles, true);
  Report rep;
  rep.add("command", "dilatation");
  rep.add("mode", "dihedral");
  std::string echo;
  for (size_t i = 0; i < angles.size(); ++i) {
    if (i) echo += ',';
    echo += plembed::format_double(angles[i]);
  }
  rep.add("angles", echo);
  rep.add("count", static_cast<int>(angles.size()));
  rep.add("dim", a.dim);
  rep.add("input_digest", plembed::fnv1a_hex(rep.text()));
  add_dilatation(rep, plembed::dihedral_wedge_coefficients(
                          plembed::DihedralWedge(a.dim, angles)));
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

struct DilPolyhedronArgs {
  std::string mesh;
  std::optional<int> facets;
  int dim = 3;
  std::string out;
};

int run_dil_polyhedron(const DilPolyhedronArgs& a) {
  Report rep;
  rep.add("command", "dilatation");
  rep.add("mode", "polyhedron");
  if (a.facets) {
    rep.add("facets", *a.facets);
    rep.add("dim", a.dim);
    rep.add("input_digest", plembed::fnv1a_hex(rep.text()));
    add_dilatation(rep, plembed::convex_polyhedron_bound(*a.facets, a.dim));
  } else {
    const std::string bytes = slurp(a.mesh);
    const plembed::EmbeddedMesh m = plembed::load_mesh(a.mesh);
    rep.add("mesh", a.mesh);
    rep.add("input_digest", plembed::fnv1a_hex(bytes));
    const auto b = plembed::polyhedron_dihedral_bound(m);
    rep.add("min_dihedral", b.min_dihedral);
    rep.add("witness_edge_u", b.witness_edge_u);
    rep.add("witness_edge_v", b.witness_edge_v);
    add_dilatation(rep, b.report);
  }
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

struct FlattenArgs {
  MeshArgs mesh;
  int vertex = 0;
  std::string lambda = "2*pi";
  double scale = 1.0;
  std::uint64_t seed = plembed::kDefaultSeed;
};

int run_flatten(const FlattenArgs& a) {
  const std::string bytes = slurp(a.mesh.path);
  const plembed::EmbeddedMesh m = plembed::load_mesh(a.mesh.path);
  const double lambda = plembed::parse_angle(a.lambda);
  const plembed::ConeLayout layout =
      plembed::flatten_cone_vertex(m.surface(), a.vertex, lambda, a.scale);

  Report rep;
  rep.add("command", "flatten");
  rep.add("mesh", a.mesh.path);
  rep.add("input_digest", plembed::fnv1a_hex(bytes));
  rep.add("vertex", a.vertex);
  rep.add("lambda", lambda);
  rep.add("scale", a.scale);
  rep.add("theta", layout.theta);
  rep.add("interior", layout.interior);
  rep.add("ring_size", static_cast<int>(layout.ring.size()));
  for (size_t i = 0; i < layout.ring.size(); ++i) {
    std::string line = std::to_string(layout.ring[i]);
    line += ' ';
    line += plembed::format_double(layout.ray_angles[i]);
    line += ' ';
    line += plembed::format_double(layout.positions[i].x());
    line += ' ';
    line += plembed::format_double(layout.positions[i].y());
    rep.add("ray[" + std::to_string(i) + "]", line);
  }
  const int samples = 64;
  rep.add("conformality_samples", samples);
  rep.add("seed", std::to_string(a.seed));
  rep.add("conformality_max_dilatation",
          plembed::planar_conformality_check(layout.theta, lambda, a.scale,
                                             samples, a.seed));
  rep.add("status", "ok");
  emit(rep, a.mesh.out);
  return 0;
}

struct SubdivideArgs {
  MeshArgs mesh;
  int n = 2;
  std::string obj_out;
};

int run_subdivide(const SubdivideArgs& a) {
  const std::string bytes = slurp(a.mesh.path);
  const plembed::EmbeddedMesh m = plembed::load_mesh(a.mesh.path);
  const plembed::EmbeddedMesh sub = plembed::subdivide_n2(m, a.n);

  Report rep;
  rep.add("command", "subdivide");
  rep.add("mesh", a.mesh.path);
  rep.add("input_digest", plembed::fnv1a_hex(bytes));
  rep.add("n", a.n);
  const auto tin = m.surface().topology_report();
  const auto tout = sub.surface().topology_report();
  rep.add("vertices_in", tin.vertex_count);
  rep.add("edges_in", tin.edge_count);
  rep.add("faces_in", tin.face_count);
  rep.add("euler_in", tin.euler_characteristic);
  rep.add("vertices_out", tout.vertex_count);
  rep.add("edges_out", tout.edge_count);
  rep.add("faces_out", tout.face_count);
  rep.add("euler_out", tout.euler_characteristic);

  // Original vertices keep their indices, so the defect drift is directly
  // comparable; exact length division should keep it at round-off.
  const auto before = plembed::angle_defects(m.surface());
  const auto after = plembed::angle_defects(sub.surface());
  double drift = 0.0;
  for (int v = 0; v < tin.vertex_count; ++v)
    drift = std::max(drift, std::abs(before.defects[v].defect -
                                     after.defects[v].defect));
  rep.add("max_defect_drift", drift);
  if (!a.obj_out.empty()) {
    plembed::save_mesh(sub, a.obj_out);
    rep.add("mesh_out", a.obj_out);
  }
  rep.add("status", "ok");
  emit(rep, a.mesh.out);
  return 0;
}

struct FoldArgs {
  std::string big;
  double small = 0.0;
  int level = 0;
  double face_rot_max_deg = 0.0;
  std::string out, obj_out;
  std::uint64_t seed = plembed::kDefaultSeed;
};

int run_fold(const FoldArgs& a) {
  const std::vector<double> sides = parse_number_list(a.big, false);
  if (sides.size() != 3)
    throw plembed::ParseError("--big wants three comma-separated side lengths");
  for (double s : sides)
    if (!(s > 0.0))
      throw plembed::ValidationError("side lengths must be positive");
  if (!(a.small > 0.0))
    throw plembed::ValidationError("--small must be positive");

  plembed::BasicConstructionInput input;
  input.big_sides = {sides[0], sides[1], sides[2]};
  input.ratio = a.small / sides[0];
  input.face_rotation_max = a.face_rot_max_deg * std::numbers::pi / 180.0;

  Report rep;
  rep.add("command", "fold");
  std::string echo;
  for (int i = 0; i < 3; ++i) {
    if (i) echo += ',';
    echo += plembed::format_double(sides[i]);
  }
  rep.add("big", echo);
  rep.add("small", a.small);
  rep.add("ratio", input.ratio);
  rep.add("level", a.level);
  rep.add("face_rotation_max_deg", a.face_rot_max_deg);
  rep.add("seed", std::to_string(a.seed));
  rep.add("input_digest", plembed::fnv1a_hex(rep.text()));

  const plembed::CreasePattern pattern =
      plembed::make_crease_pattern(input.big_sides, a.level, input.min_angle);
  plembed::FoldOptions options;
  options.seed = a.seed;
  const plembed::PleatedSurface res =
      plembed::fold_basic_construction(input, pattern, options);

  rep.add("pieces", res.pieces);
  rep.add("circumradius", pattern.circumradius);
  rep.add("iterations", res.iterations);
  rep.add("constraint_residual", res.constraint_residual);
  rep.add("isometry_residual", res.isometry_residual);
  rep.add("prism_height", res.prism_height);
  for (int k = 0; k < 3; ++k) {
    std::string line = plembed::format_double(res.prism_base[k].x());
    line += ' ';
    line += plembed::format_double(res.prism_base[k].y());
    line += ' ';
    line += plembed::format_double(res.prism_base[k].z());
    rep.add("base[" + std::to_string(k) + "]", line);
  }
  rep.add("feasible", res.feasible);
  if (!a.obj_out.empty()) {
    plembed::save_mesh(res.mesh, a.obj_out);
    rep.add("mesh_out", a.obj_out);
  }
  rep.add("status", res.feasible ? "ok" : "infeasible");
  emit(rep, a.out);
  return res.feasible ? 0 : 3;
}

struct RippleArgs {
  std::string theta;
  int teeth = 0;
  double radius = 0.0;
  double delta = 0.0;
  std::string out, obj_out;
};

int run_ripple(const RippleArgs& a) {
  const double theta = plembed::parse_angle(a.theta);
  Report rep;
  rep.add("command", "ripple");
  rep.add("theta", theta);
  rep.add("teeth", a.teeth);
  rep.add("radius", a.radius);
  rep.add("delta", a.delta);
  rep.add("input_digest", plembed::fnv1a_hex(rep.text()));

  const plembed::RippledCone rc =
      plembed::build_rippled_cone(theta, a.teeth, a.radius, a.delta);
  rep.add("pair_angle", rc.pair_angle);
  rep.add("elevation", rc.elevation);
  rep.add("spoke_length", rc.spoke_length);
  rep.add("vertices", rc.mesh.vertex_count());
  rep.add("faces", static_cast<int>(rc.mesh.faces().size()));
  rep.add("apex", rc.apex);
  rep.add("apex_angle_sum", rc.apex_angle_sum);
  rep.add("apex_defect", 2.0 * std::numbers::pi - rc.apex_angle_sum);
  const auto cr = plembed::angle_defects(rc.mesh.surface());
  rep.add("defect_total", cr.defect_total);
  rep.add("two_pi_chi", cr.two_pi_chi);
  rep.add("gauss_bonnet_residual", cr.gauss_bonnet_residual);
  if (!a.obj_out.empty()) {
    plembed::save_mesh(rc.mesh, a.obj_out);
    rep.add("mesh_out", a.obj_out);
  }
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

struct ShortcheckArgs {
  std::string source, target;
  int refine = 0;
  std::string map_path;
  std::string out;
};

int run_shortcheck(const ShortcheckArgs& a) {
  const std::string src_bytes = slurp(a.source);
  const std::string tgt_bytes = slurp(a.target);
  const plembed::EmbeddedMesh src = plembed::load_mesh(a.source);
  const plembed::EmbeddedMesh tgt = plembed::load_mesh(a.target);

  std::vector<int> vmap;
  std::string map_bytes = "identity";
  if (a.map_path.empty()) {
    if (src.vertex_count() != tgt.vertex_count())
      throw plembed::ValidationError(
          "identity map needs equal vertex counts; pass --map");
    vmap.resize(src.vertex_count());
    for (int v = 0; v < src.vertex_count(); ++v) vmap[v] = v;
  } else {
    map_bytes = slurp(a.map_path);
    std::istringstream ss(map_bytes);
    int x;
    while (ss >> x) vmap.push_back(x);
    if (static_cast<int>(vmap.size()) != src.vertex_count())
      throw plembed::ParseError(
          "map file must list one target vertex per source vertex");
  }

  Report rep;
  rep.add("command", "shortcheck");
  rep.add("source", a.source);
  rep.add("target", a.target);
  rep.add("map", a.map_path.empty() ? "identity" : a.map_path);
  rep.add("input_digest",
          plembed::fnv1a_hex(src_bytes + "\n" + tgt_bytes + "\n" + map_bytes));
  rep.add("refine", a.refine);
  const plembed::ShortMapReport r =
      plembed::short_map_check(src.surface(), tgt.surface(), vmap, a.refine);
  rep.add("pair_count", r.pair_count);
  rep.add("max_ratio", r.max_ratio);
  rep.add("is_short", r.is_short);
  rep.add("witness_u", r.witness[0]);
  rep.add("witness_v", r.witness[1]);
  rep.add("status", "ok");
  emit(rep, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"piecewise-linear geometry toolkit"};
  app.name("plembed");
  app.require_subcommand(1);
  app.set_version_flag("--version", "plembed 0.1.0");

  int exit_code = 0;
  MeshArgs validate_args;
  MeshArgs curvature_args;
  DistanceArgs distance_args;
  NetArgs net_args;
  KuratowskiArgs kur_args;
  DilFoldingArgs dfold_args;
  DilWedgeArgs dwedge_args;
  DilDihedralArgs ddih_args;
  DilPolyhedronArgs dpoly_args;
  FlattenArgs flatten_args;
  SubdivideArgs subdivide_args;
  FoldArgs fold_args;
  RippleArgs ripple_args;
  ShortcheckArgs short_args;
  double net_eps = 0.0, kur_eps = 0.0;
  int net_count = 0, kur_landmarks = 0, dpoly_facets = 0;

  try {
    const std::uint64_t seed = global_seed();
    kur_args.seed = seed;
    dfold_args.seed = seed;
    flatten_args.seed = seed;
    fold_args.seed = seed;

    auto* validate = app.add_subcommand("validate", "Load a mesh and report its topology");
    validate->add_option("mesh", validate_args.path, "OFF or OBJ file")->required();
    validate->add_option("--out", validate_args.out, "Write the report here too");
    validate->callback([&] { exit_code = run_validate(validate_args); });

    auto* curvature = app.add_subcommand("curvature", "Angle defects, dihedrals, Gauss-Bonnet totals");
    curvature->add_option("mesh", curvature_args.path, "OFF or OBJ file")->required();
    curvature->add_option("--out", curvature_args.out, "Write the report here too");
    curvature->callback([&] { exit_code = run_curvature(curvature_args); });

    auto* distances = app.add_subcommand("distances", "Intrinsic distances from one vertex");
    distances->add_option("mesh", distance_args.mesh.path, "OFF or OBJ file")->required();
    distances->add_option("--source", distance_args.source, "Source vertex")->required();
    distances->add_option("--refine", distance_args.refine, "Grid refinement level")
        ->check(CLI::Range(0, 8));
    distances->add_option("--out", distance_args.mesh.out, "Write the report here too");
    distances->callback([&] { exit_code = run_distances(distance_args); });

    auto* net = app.add_subcommand("net", "Farthest-point landmark net");
    net->add_option("mesh", net_args.mesh.path, "OFF or OBJ file")->required();
    auto* net_goal = net->add_option_group("goal", "Stopping rule");
    net_goal->add_option("--epsilon", net_eps, "Target covering radius");
    net_goal->add_option("--count", net_count, "Landmark count");
    net_goal->require_option(1);
    net->add_option("--refine", net_args.refine, "Grid refinement level")
        ->check(CLI::Range(0, 8));
    net->add_option("--out", net_args.mesh.out, "Write the report here too");
    net->callback([&] {
      if (net_goal->count("--epsilon")) net_args.epsilon = net_eps;
      if (net_goal->count("--count")) net_args.count = net_count;
      exit_code = run_net(net_args);
    });

    auto* kur = app.add_subcommand("kuratowski", "Sup-norm landmark embedding");
    kur->add_option("mesh", kur_args.mesh.path, "OFF or OBJ file")->required();
    auto* kur_goal = kur->add_option_group("landmark rule", "Landmark selection");
    kur_goal->add_option("--landmarks", kur_landmarks, "Landmark count");
    kur_goal->add_option("--epsilon", kur_eps, "Target covering radius");
    kur_goal->require_option(1);
    kur->add_option("--refine", kur_args.refine, "Grid refinement level")
        ->check(CLI::Range(0, 8));
    kur->add_flag("--check-bilipschitz", kur_args.check_bilipschitz,
                  "Measure distance distortion over sampled pairs");
    kur->add_option("--pairs", kur_args.pairs, "Pair sample budget")
        ->check(CLI::PositiveNumber);
    kur->add_option("--out", kur_args.mesh.out, "Write the report here too");
    kur->callback([&] {
      if (kur_goal->count("--landmarks")) kur_args.landmarks = kur_landmarks;
      if (kur_goal->count("--epsilon")) kur_args.epsilon = kur_eps;
      exit_code = run_kuratowski(kur_args);
    });

    auto* dil = app.add_subcommand("dilatation", "Quasiconformal dilatations and bounds");
    dil->require_subcommand(1);

    auto* dfold = dil->add_subcommand("folding", "Closed-form folding map dilatation");
    dfold->add_option("--alpha", dfold_args.alpha, "Source wedge angle")->required();
    dfold->add_option("--beta", dfold_args.beta, "Target wedge angle")->required();
    dfold->add_option("--dim", dfold_args.dim, "Ambient dimension")->required();
    dfold->add_flag("--numeric", dfold_args.numeric, "Cross-check against finite differences");
    dfold->add_option("--out", dfold_args.out, "Write the report here too");
    dfold->callback([&] { exit_code = run_dil_folding(dfold_args); });

    auto* dwedge = dil->add_subcommand("wedge", "Best coefficients of a wedge domain");
    dwedge->add_option("--alpha", dwedge_args.alpha, "Wedge angle")->required();
    dwedge->add_option("--dim", dwedge_args.dim, "Ambient dimension")->required();
    dwedge->add_option("--out", dwedge_args.out, "Write the report here too");
    dwedge->callback([&] { exit_code = run_dil_wedge(dwedge_args); });

    auto* ddih = dil->add_subcommand("dihedral", "Coefficients of a dihedral wedge intersection");
    ddih->add_option("--angles", ddih_args.angles, "Comma-separated wedge angles")->required();
    ddih->add_option("--dim", ddih_args.dim, "Ambient dimension")->required();
    ddih->add_option("--out", ddih_args.out, "Write the report here too");
    ddih->callback([&] { exit_code = run_dil_dihedral(ddih_args); });

    auto* dpoly = dil->add_subcommand("polyhedron", "Flattening bounds for convex polyhedra");
    auto* dpoly_src = dpoly->add_option_group("input", "Facet count or mesh");
    dpoly_src->add_option("mesh", dpoly_args.mesh, "Closed convex mesh (OFF or OBJ)");
    dpoly_src->add_option("--faces", dpoly_facets, "Facet count");
    dpoly_src->require_option(1);
    dpoly->add_option("--dim", dpoly_args.dim, "Ambient dimension");
    dpoly->add_option("--out", dpoly_args.out, "Write the report here too");
    dpoly->callback([&] {
      if (dpoly_src->count("--faces")) dpoly_args.facets = dpoly_facets;
      exit_code = run_dil_polyhedron(dpoly_args);
    });

    auto* flatten = app.add_subcommand("flatten", "Develop a vertex star through the cone power map");
    flatten->add_option("mesh", flatten_args.mesh.path, "OFF or OBJ file")->required();
    flatten->add_option("--vertex", flatten_args.vertex, "Vertex to flatten")->required();
    flatten->add_option("--lambda", flatten_args.lambda, "Target cone angle (default 2*pi)");
    flatten->add_option("--scale", flatten_args.scale, "Radial scale factor");
    flatten->add_option("--out", flatten_args.mesh.out, "Write the report here too");
    flatten->callback([&] { exit_code = run_flatten(flatten_args); });

    auto* subdivide = app.add_subcommand("subdivide", "Split every face into n^2 similar copies");
    subdivide->add_option("mesh", subdivide_args.mesh.path, "OFF or OBJ file")->required();
    subdivide->add_option("--n", subdivide_args.n, "Edge section count")
        ->required()->check(CLI::PositiveNumber);
    subdivide->add_option("--obj-out", subdivide_args.obj_out, "Write the subdivided mesh here");
    subdivide->add_option("--out", subdivide_args.mesh.out, "Write the report here too");
    subdivide->callback([&] { exit_code = run_subdivide(subdivide_args); });

    auto* fold = app.add_subcommand("fold", "Fold a triangle onto the prism over a smaller copy");
    fold->add_option("--big", fold_args.big, "Triangle side lengths s1,s2,s3")->required();
    fold->add_option("--small", fold_args.small, "Side of the small copy matching s1")->required();
    fold->add_option("--level", fold_args.level, "Crease refinement level")
        ->required()->check(CLI::Range(0, 12));
    fold->add_option("--face-rot-max", fold_args.face_rot_max_deg,
                     "Lateral face tilt allowance in degrees");
    fold->add_option("--obj-out", fold_args.obj_out, "Write the folded mesh here");
    fold->add_option("--out", fold_args.out, "Write the report here too");
    fold->callback([&] { exit_code = run_fold(fold_args); });

    auto* ripple = app.add_subcommand("ripple", "Saw-blade cone with angle excess at the apex");
    ripple->add_option("--theta", ripple_args.theta, "Total apex angle (> 2*pi)")->required();
    ripple->add_option("--teeth", ripple_args.teeth, "Tooth count")->required();
    ripple->add_option("--radius", ripple_args.radius, "Footprint radius")->required();
    ripple->add_option("--delta", ripple_args.delta, "Tooth half-width")->required();
    ripple->add_option("--obj-out", ripple_args.obj_out, "Write the mesh here");
    ripple->add_option("--out", ripple_args.out, "Write the report here too");
    ripple->callback([&] { exit_code = run_ripple(ripple_args); });

    auto* shortcheck = app.add_subcommand("shortcheck", "Test whether a vertex map is metrically short");
    shortcheck->add_option("source", short_args.source, "Source mesh")->required();
    shortcheck->add_option("target", short_args.target, "Target mesh")->required();
    shortcheck->add_option("--refine", short_args.refine, "Grid refinement level")
        ->check(CLI::Range(0, 8));
    shortcheck->add_option("--map", short_args.map_path,
                           "File listing the target vertex for each source vertex");
    shortcheck->add_option("--out", short_args.out, "Write the report here too");
    shortcheck->callback([&] { exit_code = run_shortcheck(short_args); });

    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const plembed::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const plembed::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const plembed::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return exit_code;
}
