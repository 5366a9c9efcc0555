#pragma once

#include <optional>
#include <random>
#include <vector>

#include "gcp/solver.hpp"

namespace gcp {

/// A solved packing together with the data it realizes.
struct Packing {
  BoundaryData boundary;
  Target target;
  SolveResult result;
};

/// Two packings on one mesh sharing the interior target.
struct PackingPair {
  const Triangulation* mesh = nullptr;
  Packing base;  // P, realizing (k̂, T̂)
  Packing star;  // P*, realizing (k̂*, T̂)
};

/// Validates mesh sizes, target equality and convergence of both solves.
PackingPair make_packing_pair(const Triangulation& mesh, Packing base, Packing star);

/// Relative tolerance for comparisons between two converged solves; ties pass.
inline constexpr double kCompareTol = 1e-10;
/// Width of the band of ratios counted as attaining the maximum.
inline constexpr double kArgmaxBand = 1e-12;

struct MaxPrincipleReport {
  std::vector<double> ratio;  // k*(v)/k(v), by vertex id
  double max_ratio = 0.0;
  std::vector<VertexId> argmax_band;
  /// k̂* <= k̂ on every boundary vertex.
  bool boundary_ordered = false;
  /// Part (a): a maximum above 1 is reached on the boundary.
  bool max_on_boundary = true;
  /// Part (b): only evaluated when boundary_ordered.
  std::optional<bool> ordered;
  std::vector<VertexId> violations;
};

MaxPrincipleReport max_principle_check(const PackingPair& pair);

/// A sub-arc l_v^f: the arc of the circle at `vertex` inside the dual circle of `face`.
struct ArcRef {
  FaceId face = 0;
  VertexId vertex = 0;
};

/// Consecutive arcs must meet at a tangent point: either the same face and two
/// different vertices, or the same vertex and two faces sharing an edge at it.
using ArcChain = std::vector<ArcRef>;

void validate_chain(const Triangulation& mesh, const ArcChain& chain);

/// Random walk of `length` consecutive arcs, deterministic for a given engine state.
ArcChain random_chain(const Triangulation& mesh, std::size_t length, std::mt19937_64& rng);

struct FaceRow {
  FaceId face = 0;
  double area = 0.0, area_star = 0.0;
  double k_f = 0.0, k_f_star = 0.0;
  bool area_ok = true;
  bool dual_ok = true;
};

struct ArcRow {
  FaceId face = 0;
  VertexId vertex = 0;
  double l = 0.0, l_star = 0.0;
  bool ok = true;
};

struct ChainRow {
  ArcChain chain;
  double d = 0.0, d_star = 0.0;
  bool ok = true;
};

struct ComparisonReport {
  std::vector<FaceRow> faces;
  std::vector<ArcRow> arcs;
  std::vector<ChainRow> chains;
  std::size_t area_violations = 0;
  std::size_t arc_violations = 0;
  std::size_t chain_violations = 0;
};

/// Discrete Schwarz-Pick comparison. Requires k̂* <= k̂ on V∂ and throws
/// HypothesisViolated otherwise.
ComparisonReport schwarz_pick_report(const PackingPair& pair,
                                     const std::vector<ArcChain>& chains = {});

/// k_f* <= k_f on every face. Requires k* <= k on V (OrderingNotEstablished otherwise).
bool dual_monotonicity_check(const PackingPair& pair);

}  // namespace gcp
