#pragma once

#include <random>
#include <vector>

#include "gcp/mesh.hpp"
#include "gcp/solver.hpp"

namespace gcp {

/// Concentric rings stitched into an annulus. The first and last rings are the
/// two boundary loops; every ring needs at least 3 vertices and there must be at
/// least 3 rings. Each ring gets an angular offset in [0, 0.5) of its spacing,
/// and neighboring rings are zipped together by angle.
Triangulation annulus(const std::vector<int>& ring_sizes, const std::vector<double>& offsets = {});

/// Annulus with random ring sizes in [min_size, max_size] and random offsets.
Triangulation random_annulus(int interior_rings, int min_size, int max_size, std::mt19937_64& rng);

/// One interior vertex (id 0) surrounded by a boundary cycle of n vertices.
Triangulation wheel(int n);

/// m×n periodic grid: every edge lies in two faces.
Triangulation torus(int m, int n);

/// Boundary curvatures drawn log-uniformly from [lo, hi].
BoundaryData random_boundary(const Triangulation& mesh, double lo, double hi, std::mt19937_64& rng);

/// Interior log-curvatures drawn uniformly from [lo, hi].
Vector random_log_curvatures(const Triangulation& mesh, double lo, double hi, std::mt19937_64& rng);

/// T̂ := T(s), which always lies in the feasible polytope.
Target forward_target(const Triangulation& mesh, const BoundaryData& boundary, const Vector& s);

}  // namespace gcp
