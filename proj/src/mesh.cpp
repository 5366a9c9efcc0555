#include "gcp/mesh.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "gcp/error.hpp"

namespace gcp {

namespace {

using Edge = std::pair<VertexId, VertexId>;

Edge make_edge(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

Triangulation Triangulation::build(std::size_t num_vertices, std::vector<Face> faces) {
  std::vector<std::int64_t> labels(num_vertices);
  for (std::size_t i = 0; i < num_vertices; ++i) labels[i] = static_cast<std::int64_t>(i);
  return build(std::move(labels), std::move(faces));
}

Triangulation Triangulation::build(std::vector<std::int64_t> labels, std::vector<Face> faces,
                                   const std::optional<std::vector<VertexId>>& declared_boundary) {
  const auto n = static_cast<VertexId>(labels.size());
  Triangulation t;
  t.labels_ = std::move(labels);
  t.faces_ = std::move(faces);

  std::map<Edge, int> multiplicity;
  for (std::size_t f = 0; f < t.faces_.size(); ++f) {
    const auto& face = t.faces_[f];
    for (VertexId v : face.v)
      if (v < 0 || v >= n)
        throw Error(ErrorKind::UnknownVertex,
                    "face " + std::to_string(f) + " references vertex " + std::to_string(v));
    if (face.v[0] == face.v[1] || face.v[1] == face.v[2] || face.v[0] == face.v[2])
      throw Error(ErrorKind::DegenerateFace, "face " + std::to_string(f) + " repeats a vertex");
    for (int a = 0; a < 3; ++a) ++multiplicity[make_edge(face.v[a], face.v[(a + 1) % 3])];
  }

  t.boundary_flag_.assign(static_cast<std::size_t>(n), false);
  bool any_boundary_edge = false;
  for (const auto& [edge, count] : multiplicity) {
    if (count > 2)
      throw Error(ErrorKind::NonManifoldEdge, "edge (" + std::to_string(edge.first) + "," +
                                                  std::to_string(edge.second) + ") lies in " +
                                                  std::to_string(count) + " faces");
    if (count == 1) {
      any_boundary_edge = true;
      t.boundary_flag_[static_cast<std::size_t>(edge.first)] = true;
      t.boundary_flag_[static_cast<std::size_t>(edge.second)] = true;
    }
  }
  if (!any_boundary_edge) throw Error(ErrorKind::NoBoundary, "every edge lies in two faces");

  for (std::size_t f = 0; f < t.faces_.size(); ++f) {
    const auto& face = t.faces_[f];
    int nb = 0;
    for (VertexId v : face.v) nb += t.boundary_flag_[static_cast<std::size_t>(v)] ? 1 : 0;
    if (nb == 3)
      throw Error(ErrorKind::FaceAllBoundary,
                  "face " + std::to_string(f) + " has three boundary vertices");
  }

  t.star_.assign(static_cast<std::size_t>(n), {});
  t.neighbors_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t f = 0; f < t.faces_.size(); ++f) {
    const auto& face = t.faces_[f];
    for (int a = 0; a < 3; ++a) {
      auto& nb = t.neighbors_[static_cast<std::size_t>(face.v[a])];
      t.star_[static_cast<std::size_t>(face.v[a])].push_back(static_cast<FaceId>(f));
      nb.push_back(face.v[(a + 1) % 3]);
      nb.push_back(face.v[(a + 2) % 3]);
    }
  }
  for (auto& nb : t.neighbors_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  t.interior_index_.assign(static_cast<std::size_t>(n), -1);
  t.boundary_index_.assign(static_cast<std::size_t>(n), -1);
  for (VertexId v = 0; v < n; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    if (t.boundary_flag_[vi]) {
      t.boundary_index_[vi] = static_cast<int>(t.boundary_.size());
      t.boundary_.push_back(v);
    } else {
      if (t.star_[vi].empty())
        throw Error(ErrorKind::IsolatedInteriorVertex,
                    "vertex " + std::to_string(t.labels_[vi]) + " belongs to no face");
      t.interior_index_[vi] = static_cast<int>(t.interior_.size());
      t.interior_.push_back(v);
    }
  }
  if (t.boundary_.size() < 2)
    throw Error(ErrorKind::NoBoundary, "fewer than two boundary vertices");

  if (declared_boundary) {
    std::vector<VertexId> declared = *declared_boundary;
    std::sort(declared.begin(), declared.end());
    declared.erase(std::unique(declared.begin(), declared.end()), declared.end());
    if (declared != t.boundary_)
      throw Error(ErrorKind::BoundaryFlagMismatch,
                  "declared boundary set differs from the one derived from edge multiplicity");
  }
  return t;
}

std::size_t Triangulation::checked(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= labels_.size())
    throw Error(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

std::span<const FaceId> Triangulation::star(VertexId i) const { return star_[checked(i)]; }

std::span<const VertexId> Triangulation::neighbors(VertexId i) const {
  return neighbors_[checked(i)];
}

std::vector<FaceId> Triangulation::edge_star(VertexId i, VertexId j) const {
  checked(j);
  std::vector<FaceId> out;
  for (FaceId f : star(i))
    if (faces_[static_cast<std::size_t>(f)].contains(j)) out.push_back(f);
  return out;
}

std::size_t Triangulation::coverage(std::span<const VertexId> interior_set) const {
  std::vector<bool> hit(faces_.size(), false);
  std::size_t count = 0;
  for (VertexId v : interior_set) {
    if (boundary_flag_[checked(v)])
      throw Error(ErrorKind::NotInteriorVertex, "vertex " + std::to_string(label(v)));
    for (FaceId f : star_[static_cast<std::size_t>(v)]) {
      if (!hit[static_cast<std::size_t>(f)]) {
        hit[static_cast<std::size_t>(f)] = true;
        ++count;
      }
    }
  }
  return count;
}

}  // namespace gcp
