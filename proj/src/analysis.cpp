#include "gcp/analysis.hpp"

#include <algorithm>
#include <string>

namespace gcp {

namespace {

bool at_least(double star, double base) {
  return star >= base - kCompareTol * std::max(std::abs(base), std::abs(star));
}

bool boundary_ordered(const PackingPair& pair) {
  const auto& a = pair.base.boundary.k_hat;
  const auto& b = pair.star.boundary.k_hat;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (b[i] > a[i]) return false;
  return true;
}

std::vector<FaceGeometry> recompute(const Triangulation& mesh, const std::vector<double>& k) {
  std::vector<FaceGeometry> out;
  out.reserve(mesh.num_faces());
  for (const auto& f : mesh.faces())
    out.push_back(face_geometry(k[static_cast<std::size_t>(f.v[0])],
                                k[static_cast<std::size_t>(f.v[1])],
                                k[static_cast<std::size_t>(f.v[2])]));
  return out;
}

}  // namespace

PackingPair make_packing_pair(const Triangulation& mesh, Packing base, Packing star) {
  for (const Packing* p : {&base, &star}) {
    if (static_cast<std::size_t>(p->boundary.k_hat.size()) != mesh.num_boundary() ||
        static_cast<std::size_t>(p->target.T_hat.size()) != mesh.num_interior() ||
        p->result.k.size() != mesh.num_vertices())
      throw Error(ErrorKind::MeshMismatch, "packing does not live on the given mesh");
    if (!p->result.converged)
      throw Error(ErrorKind::InvalidInput, "both packings must come from converged solves");
  }
  if (base.target.T_hat != star.target.T_hat)
    throw Error(ErrorKind::TargetMismatch, "the two packings prescribe different interior totals");
  return PackingPair{&mesh, std::move(base), std::move(star)};
}

MaxPrincipleReport max_principle_check(const PackingPair& pair) {
  const auto& mesh = *pair.mesh;
  const auto& k = pair.base.result.k;
  const auto& ks = pair.star.result.k;
  if (k.size() != mesh.num_vertices() || ks.size() != mesh.num_vertices())
    throw Error(ErrorKind::MeshMismatch, "curvature vectors do not match the mesh");

  MaxPrincipleReport rep;
  rep.ratio.resize(k.size());
  for (std::size_t v = 0; v < k.size(); ++v) rep.ratio[v] = ks[v] / k[v];
  rep.max_ratio = *std::max_element(rep.ratio.begin(), rep.ratio.end());
  for (std::size_t v = 0; v < k.size(); ++v)
    if (rep.ratio[v] >= rep.max_ratio * (1.0 - kArgmaxBand))
      rep.argmax_band.push_back(static_cast<VertexId>(v));

  if (rep.max_ratio > 1.0 + kArgmaxBand) {
    rep.max_on_boundary = std::any_of(rep.argmax_band.begin(), rep.argmax_band.end(),
                                      [&](VertexId v) { return mesh.is_boundary(v); });
    if (!rep.max_on_boundary) rep.violations = rep.argmax_band;
  }

  rep.boundary_ordered = boundary_ordered(pair);
  if (rep.boundary_ordered) {
    bool ordered = true;
    for (std::size_t v = 0; v < k.size(); ++v) {
      if (ks[v] > k[v] * (1.0 + kCompareTol)) {
        ordered = false;
        const auto id = static_cast<VertexId>(v);
        if (std::find(rep.violations.begin(), rep.violations.end(), id) == rep.violations.end())
          rep.violations.push_back(id);
      }
    }
    rep.ordered = ordered;
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  return rep;
}

void validate_chain(const Triangulation& mesh, const ArcChain& chain) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& a = chain[i];
    if (a.face < 0 || static_cast<std::size_t>(a.face) >= mesh.num_faces() ||
        !mesh.face(a.face).contains(a.vertex))
      throw Error(ErrorKind::InvalidInput, "chain entry " + std::to_string(i) +
                                               " does not name a vertex of its face");
    if (i == 0) continue;
    const auto& p = chain[i - 1];
    bool ok = false;
    if (p.face == a.face) {
      ok = p.vertex != a.vertex;
    } else if (p.vertex == a.vertex) {
      // The two faces must share an edge through the common vertex.
      for (VertexId w : mesh.face(p.face).v)
        if (w != a.vertex && mesh.face(a.face).contains(w)) ok = true;
    }
    if (!ok)
      throw Error(ErrorKind::InvalidInput,
                  "chain entries " + std::to_string(i - 1) + " and " + std::to_string(i) +
                      " do not meet at a tangent point");
  }
}

ArcChain random_chain(const Triangulation& mesh, std::size_t length, std::mt19937_64& rng) {
  ArcChain chain;
  if (length == 0 || mesh.num_faces() == 0) return chain;
  std::uniform_int_distribution<std::size_t> pick_face(0, mesh.num_faces() - 1);
  const auto f0 = static_cast<FaceId>(pick_face(rng));
  chain.push_back({f0, mesh.face(f0).v[std::uniform_int_distribution<int>(0, 2)(rng)]});
  while (chain.size() < length) {
    const ArcRef cur = chain.back();
    std::vector<ArcRef> moves;
    for (VertexId w : mesh.face(cur.face).v) {
      if (w == cur.vertex) continue;
      moves.push_back({cur.face, w});
      for (FaceId g : mesh.edge_star(cur.vertex, w))
        if (g != cur.face) moves.push_back({g, cur.vertex});
    }
    chain.push_back(moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)]);
  }
  return chain;
}

ComparisonReport schwarz_pick_report(const PackingPair& pair, const std::vector<ArcChain>& chains) {
  const auto& mesh = *pair.mesh;
  if (!boundary_ordered(pair))
    throw Error(ErrorKind::HypothesisViolated,
                "k̂* <= k̂ fails on at least one boundary vertex");
  for (const auto& c : chains) validate_chain(mesh, c);

  const auto geo = recompute(mesh, pair.base.result.k);
  const auto geo_star = recompute(mesh, pair.star.result.k);

  ComparisonReport rep;
  for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
    FaceRow row;
    row.face = static_cast<FaceId>(f);
    row.area = geo[f].area;
    row.area_star = geo_star[f].area;
    row.k_f = geo[f].k_f;
    row.k_f_star = geo_star[f].k_f;
    row.area_ok = at_least(row.area_star, row.area);
    row.dual_ok = at_least(row.k_f, row.k_f_star);
    if (!row.area_ok) ++rep.area_violations;
    rep.faces.push_back(row);
    for (int a = 0; a < 3; ++a) {
      ArcRow arc{row.face, mesh.face(row.face).v[a], geo[f].l[a], geo_star[f].l[a], true};
      arc.ok = at_least(arc.l_star, arc.l);
      if (!arc.ok) ++rep.arc_violations;
      rep.arcs.push_back(arc);
    }
  }
  for (const auto& c : chains) {
    ChainRow row;
    row.chain = c;
    for (const auto& a : c) {
      const int slot = mesh.face(a.face).slot_of(a.vertex);
      row.d += geo[static_cast<std::size_t>(a.face)].l[slot];
      row.d_star += geo_star[static_cast<std::size_t>(a.face)].l[slot];
    }
    row.ok = at_least(row.d_star, row.d);
    if (!row.ok) ++rep.chain_violations;
    rep.chains.push_back(std::move(row));
  }
  return rep;
}

bool dual_monotonicity_check(const PackingPair& pair) {
  const auto& mesh = *pair.mesh;
  const auto& k = pair.base.result.k;
  const auto& ks = pair.star.result.k;
  for (std::size_t v = 0; v < k.size(); ++v)
    if (ks[v] > k[v] * (1.0 + kCompareTol))
      throw Error(ErrorKind::OrderingNotEstablished,
                  "k* <= k fails at vertex " + std::to_string(mesh.label(static_cast<VertexId>(v))));
  for (const auto& f : mesh.faces()) {
    auto at = [&](const std::vector<double>& kk, int a) { return kk[static_cast<std::size_t>(f.v[a])]; };
    const double kf = dual_curvature(at(k, 0), at(k, 1), at(k, 2));
    const double kfs = dual_curvature(at(ks, 0), at(ks, 1), at(ks, 2));
    if (kfs > kf * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace gcp
