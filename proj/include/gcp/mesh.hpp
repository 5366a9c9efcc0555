#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gcp {

using VertexId = std::int32_t;
using FaceId = std::int32_t;

/// A triangle as an ordered vertex triple. Incidence queries treat it as a set.
struct Face {
  std::array<VertexId, 3> v{};

  bool contains(VertexId i) const { return v[0] == i || v[1] == i || v[2] == i; }
  /// Slot (0..2) of vertex i in this face, or -1.
  int slot_of(VertexId i) const {
    for (int a = 0; a < 3; ++a)
      if (v[a] == i) return a;
    return -1;
  }
};

/// Immutable triangulated surface with boundary.
///
/// Vertices are dense ids 0..n-1. Boundary classification is derived from edge
/// multiplicity at build time. Interior and boundary vertices each get a dense
/// secondary index so solver vectors can be plain arrays over V° or V∂.
class Triangulation {
 public:
  /// Validates and builds. `labels` are external ids (one per vertex, used only
  /// for I/O); `declared_boundary`, if given, must equal the derived boundary set.
  static Triangulation build(std::vector<std::int64_t> labels, std::vector<Face> faces,
                             const std::optional<std::vector<VertexId>>& declared_boundary = {});

  /// Convenience overload with labels 0..n-1.
  static Triangulation build(std::size_t num_vertices, std::vector<Face> faces);

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_faces() const { return faces_.size(); }
  std::size_t num_interior() const { return interior_.size(); }
  std::size_t num_boundary() const { return boundary_.size(); }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(FaceId f) const { return faces_.at(static_cast<std::size_t>(f)); }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  std::int64_t label(VertexId v) const { return labels_[checked(v)]; }

  bool is_boundary(VertexId v) const { return boundary_flag_[checked(v)]; }
  /// Dense index into V°, or -1 for boundary vertices.
  int interior_index(VertexId v) const { return interior_index_[checked(v)]; }
  /// Dense index into V∂, or -1 for interior vertices.
  int boundary_index(VertexId v) const { return boundary_index_[checked(v)]; }
  const std::vector<VertexId>& interior_vertices() const { return interior_; }
  const std::vector<VertexId>& boundary_vertices() const { return boundary_; }

  /// Faces containing i, ascending by face id.
  std::span<const FaceId> star(VertexId i) const;
  /// Faces containing both i and j (0, 1 or 2 of them).
  std::vector<FaceId> edge_star(VertexId i, VertexId j) const;
  /// Vertices sharing an edge with i, ascending.
  std::span<const VertexId> neighbors(VertexId i) const;
  /// |F_I|: number of faces incident to at least one vertex of I (I ⊆ V°).
  std::size_t coverage(std::span<const VertexId> interior_set) const;

 private:
  Triangulation() = default;
  std::size_t checked(VertexId v) const;

  std::vector<std::int64_t> labels_;
  std::vector<Face> faces_;
  std::vector<bool> boundary_flag_;
  std::vector<int> interior_index_;
  std::vector<int> boundary_index_;
  std::vector<VertexId> interior_;
  std::vector<VertexId> boundary_;
  std::vector<std::vector<FaceId>> star_;
  std::vector<std::vector<VertexId>> neighbors_;
};

}  // namespace gcp
