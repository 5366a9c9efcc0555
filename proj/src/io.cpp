#include "gcp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gcp/error.hpp"

namespace gcp::io {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// 1-based line and column of a byte offset.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::map<std::int64_t, VertexId> label_index(const Triangulation& mesh) {
  std::map<std::int64_t, VertexId> idx;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
    idx[mesh.labels()[v]] = static_cast<VertexId>(v);
  return idx;
}

// Reads {"<vid>": value} restricted to vertices selected by `want`, placed by `slot`.
template <class Want, class Slot>
Vector parse_vertex_map(const json& j, const Triangulation& mesh, std::size_t n, Want want,
                        Slot slot, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object keyed by vertex id");
  const auto idx = label_index(mesh);
  Vector out = Vector::Constant(static_cast<Eigen::Index>(n), std::nan(""));
  for (const auto& [key, value] : j.items()) {
    std::int64_t label = 0;
    try {
      std::size_t used = 0;
      label = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(where + "/" + key, "key is not an integer vertex id");
    }
    const auto it = idx.find(label);
    if (it == idx.end()) fail(where + "/" + key, "unknown vertex id");
    if (!want(it->second)) fail(where + "/" + key, "vertex is of the wrong kind for this map");
    if (!value.is_number()) fail(where + "/" + key, "expected a number");
    out[slot(it->second)] = value.template get<double>();
  }
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (std::isnan(out[i])) fail(where, "missing value for at least one vertex");
  return out;
}

}  // namespace

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + locate(text, e.byte > 0 ? e.byte - 1 : 0) +
                                           ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

Triangulation parse_mesh(const json& j) {
  const auto& verts = field(j, "vertices", "/mesh");
  const auto& faces = field(j, "faces", "/mesh");
  if (!verts.is_array()) fail("/mesh/vertices", "expected an array");
  if (!faces.is_array()) fail("/mesh/faces", "expected an array");

  std::vector<std::int64_t> labels;
  std::map<std::int64_t, VertexId> idx;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "/mesh/vertices/" + std::to_string(i);
    const auto& id = field(verts[i], "id", where);
    if (!id.is_number_integer()) fail(where + "/id", "expected an integer");
    const auto label = id.get<std::int64_t>();
    if (!idx.emplace(label, static_cast<VertexId>(labels.size())).second)
      fail(where + "/id", "duplicate vertex id");
    labels.push_back(label);
  }
  auto lookup = [&](const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer vertex id");
    const auto it = idx.find(v.get<std::int64_t>());
    if (it == idx.end())
      throw Error(ErrorKind::UnknownVertex, where + ": vertex " + v.dump() + " is not declared");
    return it->second;
  };

  std::vector<Face> out;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const std::string where = "/mesh/faces/" + std::to_string(f);
    if (!faces[f].is_array() || faces[f].size() != 3) fail(where, "expected three vertex ids");
    Face face;
    for (int a = 0; a < 3; ++a) face.v[a] = lookup(faces[f][a], where + "/" + std::to_string(a));
    out.push_back(face);
  }
  std::optional<std::vector<VertexId>> declared;
  if (j.contains("boundary")) {
    if (!j["boundary"].is_array()) fail("/mesh/boundary", "expected an array");
    declared.emplace();
    for (std::size_t i = 0; i < j["boundary"].size(); ++i)
      declared->push_back(lookup(j["boundary"][i], "/mesh/boundary/" + std::to_string(i)));
  }
  return Triangulation::build(std::move(labels), std::move(out), declared);
}

json mesh_to_json(const Triangulation& mesh) {
  json j;
  j["vertices"] = json::array();
  for (auto label : mesh.labels()) j["vertices"].push_back({{"id", label}});
  j["faces"] = json::array();
  for (const auto& f : mesh.faces())
    j["faces"].push_back({mesh.label(f.v[0]), mesh.label(f.v[1]), mesh.label(f.v[2])});
  j["boundary"] = json::array();
  for (VertexId v : mesh.boundary_vertices()) j["boundary"].push_back(mesh.label(v));
  return j;
}

BoundaryData parse_boundary(const json& j, const Triangulation& mesh) {
  BoundaryData b;
  b.k_hat = parse_vertex_map(
      j, mesh, mesh.num_boundary(), [&](VertexId v) { return mesh.is_boundary(v); },
      [&](VertexId v) { return mesh.boundary_index(v); }, "/boundary_k");
  for (double k : b.k_hat)
    if (!(k > 0.0) || !std::isfinite(k))
      throw Error(ErrorKind::NonPositiveCurvature, "/boundary_k: curvatures must be positive");
  return b;
}

Target parse_target(const json& j, const Triangulation& mesh) {
  Target t;
  t.T_hat = parse_vertex_map(
      j, mesh, mesh.num_interior(), [&](VertexId v) { return !mesh.is_boundary(v); },
      [&](VertexId v) { return mesh.interior_index(v); }, "/target_T");
  for (double x : t.T_hat)
    if (!(x > 0.0) || !std::isfinite(x))
      throw Error(ErrorKind::InvalidInput, "/target_T: totals must be positive");
  return t;
}

Problem parse_problem(const json& j) {
  Triangulation mesh = parse_mesh(field(j, "mesh", ""));
  BoundaryData b = parse_boundary(field(j, "boundary_k", ""), mesh);
  Target t = parse_target(field(j, "target_T", ""), mesh);
  return Problem{std::move(mesh), std::move(b), std::move(t)};
}

json problem_to_json(const Problem& p) {
  json j;
  j["mesh"] = mesh_to_json(p.mesh);
  j["boundary_k"] = json::object();
  for (VertexId v : p.mesh.boundary_vertices())
    j["boundary_k"][std::to_string(p.mesh.label(v))] = p.boundary.k_hat[p.mesh.boundary_index(v)];
  j["target_T"] = json::object();
  for (VertexId v : p.mesh.interior_vertices())
    j["target_T"][std::to_string(p.mesh.label(v))] = p.target.T_hat[p.mesh.interior_index(v)];
  return j;
}

json verdict_to_json(const Triangulation& mesh, const FeasibilityVerdict& v) {
  json j;
  j["feasible"] = v.feasible;
  if (!v.feasible) {
    j["witness"] = json::array();
    for (VertexId w : v.witness) j["witness"].push_back(mesh.label(w));
    j["witness_total"] = v.witness_total;
    j["witness_faces"] = v.witness_coverage;
  }
  return j;
}

json result_to_json(const Triangulation& mesh, const Target& target, const SolveResult& r,
                    const std::string& solver) {
  json j;
  j["solver"] = solver;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["time"] = r.time;
  j["residual_inf"] = r.residual_inf;
  j["mesh"] = mesh_to_json(mesh);
  j["k"] = json::object();
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
    j["k"][std::to_string(mesh.labels()[v])] = r.k[v];
  j["T"] = json::object();
  j["target_T"] = json::object();
  for (VertexId v : mesh.interior_vertices()) {
    const auto key = std::to_string(mesh.label(v));
    j["T"][key] = r.T[mesh.interior_index(v)];
    j["target_T"][key] = target.T_hat[mesh.interior_index(v)];
  }
  j["faces"] = json::array();
  for (std::size_t f = 0; f < r.faces.size(); ++f) {
    const auto& g = r.faces[f];
    const auto& face = mesh.faces()[f];
    j["faces"].push_back({{"id", f},
                          {"vertices", {mesh.label(face.v[0]), mesh.label(face.v[1]), mesh.label(face.v[2])}},
                          {"k_f", g.k_f},
                          {"l", g.l},
                          {"T", g.T},
                          {"area", g.area}});
  }
  return j;
}

StoredResult parse_result(const json& j) {
  StoredResult out{parse_mesh(field(j, "mesh", "")), {}, false};
  const auto& conv = field(j, "converged", "");
  if (!conv.is_boolean()) fail("/converged", "expected a boolean");
  out.converged = conv.get<bool>();
  const auto& kmap = field(j, "k", "");
  out.k = [&] {
    const Vector k = parse_vertex_map(
        kmap, out.mesh, out.mesh.num_vertices(), [](VertexId) { return true; },
        [](VertexId v) { return v; }, "/k");
    return std::vector<double>(k.begin(), k.end());
  }();
  return out;
}

json comparison_to_json(const PackingPair& pair, const MaxPrincipleReport& mp,
                        const std::optional<ComparisonReport>& sp, std::optional<bool> dual_ok) {
  const auto& mesh = *pair.mesh;
  json j;
  json vertices = json::array();
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const auto id = static_cast<VertexId>(v);
    vertices.push_back({{"id", mesh.label(id)},
                        {"boundary", mesh.is_boundary(id)},
                        {"k", pair.base.result.k[v]},
                        {"k_star", pair.star.result.k[v]},
                        {"ratio", mp.ratio[v]},
                        {"ok", std::find(mp.violations.begin(), mp.violations.end(), id) ==
                                   mp.violations.end()}});
  }
  j["vertices"] = std::move(vertices);

  json max_principle;
  max_principle["max_ratio"] = mp.max_ratio;
  max_principle["argmax_band"] = json::array();
  for (VertexId v : mp.argmax_band) max_principle["argmax_band"].push_back(mesh.label(v));
  max_principle["max_on_boundary"] = mp.max_on_boundary;
  max_principle["boundary_ordered"] = mp.boundary_ordered;
  max_principle["ordered"] = mp.ordered ? json(*mp.ordered) : json(nullptr);
  max_principle["violations"] = json::array();
  for (VertexId v : mp.violations) max_principle["violations"].push_back(mesh.label(v));
  j["max_principle"] = std::move(max_principle);

  std::size_t dual_violations = 0;
  if (sp) {
    json faces = json::array();
    for (const auto& row : sp->faces) {
      if (!row.dual_ok) ++dual_violations;
      faces.push_back({{"id", row.face},
                       {"area", row.area},
                       {"area_star", row.area_star},
                       {"area_diff", row.area_star - row.area},
                       {"area_ok", row.area_ok},
                       {"k_f", row.k_f},
                       {"k_f_star", row.k_f_star},
                       {"k_f_ok", row.dual_ok}});
    }
    json arcs = json::array();
    for (const auto& row : sp->arcs)
      arcs.push_back({{"face", row.face},
                      {"vertex", mesh.label(row.vertex)},
                      {"l", row.l},
                      {"l_star", row.l_star},
                      {"diff", row.l_star - row.l},
                      {"ok", row.ok}});
    json chains = json::array();
    for (const auto& row : sp->chains) {
      json arcs_of = json::array();
      for (const auto& a : row.chain) arcs_of.push_back({{"face", a.face}, {"vertex", mesh.label(a.vertex)}});
      chains.push_back({{"arcs", std::move(arcs_of)},
                        {"d", row.d},
                        {"d_star", row.d_star},
                        {"diff", row.d_star - row.d},
                        {"ok", row.ok}});
    }
    j["schwarz_pick"] = {{"faces", std::move(faces)}, {"arcs", std::move(arcs)}, {"chains", std::move(chains)}};
  } else {
    j["schwarz_pick"] = nullptr;
  }

  const std::size_t mp_violations = mp.violations.size();
  json summary;
  summary["hypothesis_holds"] = mp.boundary_ordered;
  summary["max_principle_violations"] = mp_violations;
  summary["area_violations"] = sp ? json(sp->area_violations) : json(nullptr);
  summary["arc_violations"] = sp ? json(sp->arc_violations) : json(nullptr);
  summary["chain_violations"] = sp ? json(sp->chain_violations) : json(nullptr);
  summary["dual_violations"] = sp ? json(dual_violations) : json(nullptr);
  summary["dual_monotone"] = dual_ok ? json(*dual_ok) : json(nullptr);
  std::size_t total = mp_violations;
  if (sp) total += sp->area_violations + sp->arc_violations + sp->chain_violations + dual_violations;
  if (dual_ok && !*dual_ok) ++total;
  summary["total_violations"] = total;
  j["summary"] = std::move(summary);
  return j;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out = "step,time,residual_inf,energy_monitor,dt\n";
  for (const auto& row : trace)
    out += std::to_string(row.step) + "," + g17(row.time) + "," + g17(row.residual_inf) + "," +
           g17(row.energy_monitor) + "," + g17(row.dt) + "\n";
  return out;
}

}  // namespace gcp::io
