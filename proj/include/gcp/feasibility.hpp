#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcp/mesh.hpp"

namespace gcp {

enum class FeasibilityMode { Enumerate, Flow };

/// Largest |V°| accepted by FeasibilityMode::Enumerate.
inline constexpr std::size_t kMaxEnumerationVertices = 20;

/// Tolerance band for the strict inequality in enumeration mode.
inline constexpr double kEnumerationSlack = 1e-12;

/// Relative inflation applied to targets in flow mode to enforce strictness.
inline constexpr double kFlowInflation = 1e-9;

struct FeasibilityVerdict {
  bool feasible = true;
  /// Interior vertices I with Σ_I T̂ not below π|F_I| (empty when feasible).
  std::vector<VertexId> witness;
  double witness_total = 0.0;        // Σ_{v∈I} T̂_v
  std::size_t witness_coverage = 0;  // |F_I|
};

/// Decides whether T̂ (indexed by interior_index) satisfies
/// Σ_{v∈I} T̂_v < π |F_I| for every nonempty I ⊆ V°.
FeasibilityVerdict check_feasibility(const Triangulation& mesh, std::span<const double> target,
                                     FeasibilityMode mode);

}  // namespace gcp
