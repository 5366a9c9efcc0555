#include "gcp/feasibility.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "gcp/error.hpp"

namespace gcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dinic max-flow on real capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : adj_(static_cast<std::size_t>(n)) {}

  void add_edge(int from, int to, double cap) {
    adj_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0.0});
  }

  double max_flow(int source, int sink) {
    double total = 0.0;
    while (bfs(source, sink)) {
      iter_.assign(adj_.size(), 0);
      while (true) {
        const double pushed = dfs(source, sink, kInf);
        if (pushed <= 0.0) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Nodes reachable from source in the residual graph (after max_flow).
  std::vector<bool> source_side(int source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<int> q;
    q.push(source);
    seen[source] = true;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int e : adj_[x]) {
        const auto& edge = edges_[e];
        if (edge.cap > kResidualEps && !seen[edge.to]) {
          seen[edge.to] = true;
          q.push(edge.to);
        }
      }
    }
    return seen;
  }

 private:
  static constexpr double kResidualEps = 1e-13;

  struct Arc {
    int to;
    double cap;
  };

  bool bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int e : adj_[x]) {
        const auto& edge = edges_[e];
        if (edge.cap > kResidualEps && level_[edge.to] < 0) {
          level_[edge.to] = level_[x] + 1;
          q.push(edge.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double dfs(int x, int sink, double limit) {
    if (x == sink) return limit;
    for (auto& i = iter_[x]; i < adj_[x].size(); ++i) {
      const int e = adj_[x][i];
      auto& edge = edges_[e];
      if (edge.cap > kResidualEps && level_[edge.to] == level_[x] + 1) {
        const double pushed = dfs(edge.to, sink, std::min(limit, edge.cap));
        if (pushed > 0.0) {
          edge.cap -= pushed;
          edges_[e ^ 1].cap += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

FeasibilityVerdict enumerate(const Triangulation& mesh, std::span<const double> target) {
  const std::size_t n = mesh.num_interior();
  if (n > kMaxEnumerationVertices)
    throw Error(ErrorKind::TooLargeForEnumeration,
                std::to_string(n) + " interior vertices (limit " +
                    std::to_string(kMaxEnumerationVertices) + ")");

  std::vector<std::uint32_t> face_masks;
  face_masks.reserve(mesh.num_faces());
  for (const auto& face : mesh.faces()) {
    std::uint32_t mask = 0;
    for (VertexId v : face.v)
      if (int idx = mesh.interior_index(v); idx >= 0) mask |= 1u << idx;
    if (mask != 0) face_masks.push_back(mask);
  }

  FeasibilityVerdict verdict;
  double worst = -kInf;
  std::uint32_t worst_mask = 0;
  const std::uint32_t limit = n == 0 ? 1u : (1u << n);
  for (std::uint32_t subset = 1; subset < limit; ++subset) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (subset & (1u << i)) sum += target[i];
    std::size_t covered = 0;
    for (std::uint32_t mask : face_masks)
      if (mask & subset) ++covered;
    const double excess = sum - std::numbers::pi * static_cast<double>(covered);
    if (excess >= -kEnumerationSlack && excess > worst) {
      worst = excess;
      worst_mask = subset;
    }
  }
  if (worst_mask != 0) {
    verdict.feasible = false;
    for (std::size_t i = 0; i < n; ++i)
      if (worst_mask & (1u << i)) verdict.witness.push_back(mesh.interior_vertices()[i]);
  }
  return verdict;
}

FeasibilityVerdict by_flow(const Triangulation& mesh, std::span<const double> target) {
  const int n = static_cast<int>(mesh.num_interior());
  const int faces = static_cast<int>(mesh.num_faces());
  const int source = 0;
  const int sink = 1;
  const auto vnode = [](int i) { return 2 + i; };
  const auto fnode = [n](int f) { return 2 + n + f; };

  FlowNetwork net(2 + n + faces);
  double supply = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cap = target[static_cast<std::size_t>(i)] * (1.0 + kFlowInflation);
    supply += cap;
    net.add_edge(source, vnode(i), cap);
    for (FaceId f : mesh.star(mesh.interior_vertices()[static_cast<std::size_t>(i)]))
      net.add_edge(vnode(i), fnode(f), kInf);
  }
  for (int f = 0; f < faces; ++f) net.add_edge(fnode(f), sink, std::numbers::pi);

  const double flow = net.max_flow(source, sink);
  FeasibilityVerdict verdict;
  if (flow >= supply - 1e-12 * (1.0 + supply)) return verdict;

  verdict.feasible = false;
  const auto side = net.source_side(source);
  for (int i = 0; i < n; ++i)
    if (side[static_cast<std::size_t>(vnode(i))])
      verdict.witness.push_back(mesh.interior_vertices()[static_cast<std::size_t>(i)]);
  return verdict;
}

}  // namespace

FeasibilityVerdict check_feasibility(const Triangulation& mesh, std::span<const double> target,
                                     FeasibilityMode mode) {
  if (target.size() != mesh.num_interior())
    throw Error(ErrorKind::InvalidInput, "target size does not match interior vertex count");
  for (double t : target)
    if (!(t > 0.0) || !std::isfinite(t))
      throw Error(ErrorKind::InvalidInput, "target entries must be positive and finite");

  FeasibilityVerdict verdict =
      mode == FeasibilityMode::Enumerate ? enumerate(mesh, target) : by_flow(mesh, target);
  if (!verdict.feasible) {
    for (VertexId v : verdict.witness)
      verdict.witness_total += target[static_cast<std::size_t>(mesh.interior_index(v))];
    verdict.witness_coverage = mesh.coverage(verdict.witness);
  }
  return verdict;
}

}  // namespace gcp
