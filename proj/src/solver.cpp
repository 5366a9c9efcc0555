#include "gcp/solver.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <string>

#include "gcp/feasibility.hpp"

namespace gcp {

namespace {

constexpr long kIterativeThreshold = 50'000;

void validate_inputs(const Triangulation& mesh, const BoundaryData& boundary,
                     const Target& target) {
  if (static_cast<std::size_t>(boundary.k_hat.size()) != mesh.num_boundary())
    throw Error(ErrorKind::InvalidInput, "boundary data size does not match boundary count");
  if (static_cast<std::size_t>(target.T_hat.size()) != mesh.num_interior())
    throw Error(ErrorKind::InvalidInput, "target size does not match interior count");
  for (double k : boundary.k_hat)
    if (!(k > 0.0) || !std::isfinite(k))
      throw Error(ErrorKind::NonPositiveCurvature, "boundary curvature " + std::to_string(k));
  for (double t : target.T_hat)
    if (!(t > 0.0) || !std::isfinite(t))
      throw Error(ErrorKind::InvalidInput, "target entries must be positive");
}

void precheck(const Triangulation& mesh, const Target& target) {
  const auto mode = mesh.num_interior() <= kMaxEnumerationVertices ? FeasibilityMode::Enumerate
                                                                    : FeasibilityMode::Flow;
  const auto verdict = check_feasibility(
      mesh, std::span<const double>(target.T_hat.data(), target.T_hat.size()), mode);
  if (!verdict.feasible)
    throw Error(ErrorKind::InfeasibleTarget, "target lies outside the feasible polytope");
}

Vector initial_state(const Triangulation& mesh, const std::optional<Vector>& s0) {
  if (!s0) return Vector::Zero(static_cast<Eigen::Index>(mesh.num_interior()));
  if (static_cast<std::size_t>(s0->size()) != mesh.num_interior())
    throw Error(ErrorKind::InvalidInput, "initial state size does not match interior count");
  return *s0;
}

// Θ(s + d) - Θ(s) along the straight segment.
double energy_increment(const Triangulation& mesh, const BoundaryData& boundary,
                        const Target& target, const Vector& s, const Vector& d) {
  auto integrand = [&](double t) {
    return (interior_totals(mesh, boundary, s + t * d) - target.T_hat).dot(d);
  };
  return boost::math::quadrature::gauss<double, 32>::integrate(integrand, 0.0, 1.0);
}

Vector solve_spd(const SparseMatrix& m, const Vector& rhs) {
  if (m.rows() > kIterativeThreshold) {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(1e-13);
    cg.compute(m);
    Vector x = cg.solve(rhs);
    if (cg.info() != Eigen::Success)
      throw Error(ErrorKind::SingularSystem, "conjugate gradients did not converge");
    return x;
  }
  Eigen::SimplicialLLT<SparseMatrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::SingularSystem, "Cholesky factorization of the Jacobian failed");
  return llt.solve(rhs);
}

void check_symmetry(const SparseMatrix& m) {
  if (double defect = symmetry_defect(m); defect > 1e-10)
    throw Error(ErrorKind::SingularSystem,
                "Jacobian is not symmetric (defect " + std::to_string(defect) + ")");
}

SolveResult finish(const Triangulation& mesh, const BoundaryData& boundary, const Target& target,
                   Vector s, SolveResult result) {
  // Re-evaluate from scratch so the reported residual is never stale.
  Assembly a = assemble(mesh, boundary, s);
  result.residual_inf =
      a.T.size() == 0 ? 0.0 : (a.T - target.T_hat).cwiseAbs().maxCoeff();
  result.k = full_curvatures(mesh, boundary, s);
  result.s = std::move(s);
  result.T = std::move(a.T);
  result.faces = std::move(a.faces);
  return result;
}

double sup_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<double> full_curvatures(const Triangulation& mesh, const BoundaryData& boundary,
                                    const Vector& s) {
  std::vector<double> k(mesh.num_vertices());
  for (std::size_t v = 0; v < k.size(); ++v) {
    const auto id = static_cast<VertexId>(v);
    if (const int b = mesh.boundary_index(id); b >= 0)
      k[v] = boundary.k_hat[b];
    else
      k[v] = std::exp(s[mesh.interior_index(id)]);
  }
  return k;
}

Assembly assemble(const Triangulation& mesh, const BoundaryData& boundary, const Vector& s) {
  const auto k = full_curvatures(mesh, boundary, s);
  const auto n = static_cast<Eigen::Index>(mesh.num_interior());

  Assembly out;
  out.T = Vector::Zero(n);
  out.faces.reserve(mesh.num_faces());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.num_faces() * 9);

  for (const auto& face : mesh.faces()) {
    FaceGeometry g = face_geometry(k[static_cast<std::size_t>(face.v[0])],
                                   k[static_cast<std::size_t>(face.v[1])],
                                   k[static_cast<std::size_t>(face.v[2])]);
    for (int a = 0; a < 3; ++a) {
      const int row = mesh.interior_index(face.v[a]);
      if (row < 0) continue;
      out.T[row] += g.T[a];
      for (int b = 0; b < 3; ++b) {
        const int col = mesh.interior_index(face.v[b]);
        if (col >= 0) triplets.emplace_back(row, col, g.dT_ds[a][b]);
      }
    }
    out.faces.push_back(g);
  }
  out.M.resize(n, n);
  out.M.setFromTriplets(triplets.begin(), triplets.end());
  out.M.makeCompressed();
  return out;
}

Vector interior_totals(const Triangulation& mesh, const BoundaryData& boundary, const Vector& s) {
  const auto k = full_curvatures(mesh, boundary, s);
  Vector T = Vector::Zero(static_cast<Eigen::Index>(mesh.num_interior()));
  for (const auto& face : mesh.faces()) {
    const auto totals = face_totals(k[static_cast<std::size_t>(face.v[0])],
                                    k[static_cast<std::size_t>(face.v[1])],
                                    k[static_cast<std::size_t>(face.v[2])]);
    for (int a = 0; a < 3; ++a)
      if (const int row = mesh.interior_index(face.v[a]); row >= 0) T[row] += totals[a];
  }
  return T;
}

double symmetry_defect(const SparseMatrix& m) {
  const SparseMatrix diff = SparseMatrix(m.transpose()) - m;
  double scale = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) scale = std::max(scale, std::abs(it.value()));
  double defect = 0.0;
  for (int c = 0; c < diff.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(diff, c); it; ++it)
      defect = std::max(defect, std::abs(it.value()));
  return scale > 0.0 ? defect / scale : defect;
}

double dominance_margin(const SparseMatrix& m) {
  Vector diag = Vector::Zero(m.rows());
  Vector off = Vector::Zero(m.rows());
  for (int c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      if (it.row() == it.col())
        diag[it.row()] += it.value();
      else
        off[it.row()] += std::abs(it.value());
    }
  }
  return m.rows() == 0 ? 0.0 : (diag - off).minCoeff();
}

double potential_energy(const Triangulation& mesh, const BoundaryData& boundary,
                        const Target& target, const Vector& s, const Vector& reference_s,
                        int nodes) {
  const Vector d = s - reference_s;
  auto integrand = [&](double t) {
    return (interior_totals(mesh, boundary, reference_s + t * d) - target.T_hat).dot(d);
  };
  using boost::math::quadrature::gauss;
  switch (nodes) {
    case 32: return gauss<double, 32>::integrate(integrand, 0.0, 1.0);
    case 64: return gauss<double, 64>::integrate(integrand, 0.0, 1.0);
    case 16: return gauss<double, 16>::integrate(integrand, 0.0, 1.0);
    default: throw Error(ErrorKind::InvalidInput, "supported quadrature sizes: 16, 32, 64");
  }
}

SolveResult newton_solve(const Triangulation& mesh, const BoundaryData& boundary,
                         const Target& target, const NewtonConfig& config) {
  validate_inputs(mesh, boundary, target);
  if (!(config.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol must be positive");
  if (config.check_feasibility) precheck(mesh, target);

  Vector s = initial_state(mesh, config.initial_s);
  SolveResult result;
  double energy = 0.0;
  double path = 0.0;
  double last_step = 0.0;

  for (int iter = 0;; ++iter) {
    const Assembly a = assemble(mesh, boundary, s);
    const Vector r = a.T - target.T_hat;
    const double res = sup_norm(r);
    result.trace.push_back({iter, path, res, energy, last_step});
    result.iterations = iter;
    result.time = path;
    if (res <= config.tol) {
      result.converged = true;
      return finish(mesh, boundary, target, std::move(s), std::move(result));
    }
    if (iter >= config.max_iter)
      throw NotConvergedError("Newton iteration budget exhausted",
                              finish(mesh, boundary, target, std::move(s), std::move(result)));

    check_symmetry(a.M);
    const Vector d = solve_spd(a.M, -r);
    const double slope = r.dot(d);

    double step = 1.0;
    double delta = 0.0;
    while (true) {
      bool ok = false;
      try {
        delta = energy_increment(mesh, boundary, target, s, step * d);
        ok = delta <= config.armijo_c * step * slope;
      } catch (const Error&) {
        // Trial point left the representable range (k overflowed); shrink.
      }
      if (ok) break;
      step *= 0.5;
      if (step < config.min_step)
        throw NotConvergedError("line search failed to find a descent step",
                                finish(mesh, boundary, target, std::move(s), std::move(result)));
    }
    s += step * d;
    energy += delta;
    path += step;
    last_step = step;
  }
}

SolveResult calabi_flow(const Triangulation& mesh, const BoundaryData& boundary,
                        const Target& target, const FlowConfig& config) {
  validate_inputs(mesh, boundary, target);
  if (!(config.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol must be positive");
  if (!(config.dt_init > 0.0)) throw Error(ErrorKind::InvalidInput, "dt_init must be positive");
  if (config.check_feasibility) precheck(mesh, target);

  struct Eval {
    Vector r;
    Vector velocity;  // -M r
    double monitor = 0.0;  // rᵀ M r
  };
  auto evaluate = [&](const Vector& s) {
    const Assembly a = assemble(mesh, boundary, s);
    check_symmetry(a.M);
    Eval e;
    e.r = a.T - target.T_hat;
    const Vector mr = a.M * e.r;
    e.velocity = -mr;
    e.monitor = e.r.dot(mr);
    return e;
  };

  Vector s = initial_state(mesh, config.initial_s);
  Eval cur = evaluate(s);
  SolveResult result;
  double t = 0.0;
  double dt = config.dt_init;
  int accepted_run = 0;
  long step = 0;
  result.trace.push_back({0, 0.0, sup_norm(cur.r), cur.monitor, dt});

  while (true) {
    if (sup_norm(cur.r) <= config.tol) {
      result.converged = true;
      result.iterations = static_cast<int>(step);
      result.time = t;
      return finish(mesh, boundary, target, std::move(s), std::move(result));
    }
    if (t >= config.t_max || step >= config.max_steps || dt < config.dt_min) {
      result.iterations = static_cast<int>(step);
      result.time = t;
      throw NotConvergedError("Calabi flow stopped before reaching tolerance",
                              finish(mesh, boundary, target, std::move(s), std::move(result)));
    }

    const double h = std::min(dt, config.t_max - t);
    Vector next;
    Eval trial;
    bool ok = true;
    try {
      if (config.integrator == Integrator::Euler) {
        next = s + h * cur.velocity;
      } else {
        const Vector& k1 = cur.velocity;
        const Vector k2 = evaluate(s + 0.5 * h * k1).velocity;
        const Vector k3 = evaluate(s + 0.5 * h * k2).velocity;
        const Vector k4 = evaluate(s + h * k3).velocity;
        next = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      trial = evaluate(next);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonPositiveCurvature) throw;
      ok = false;
    }
    if (!ok || !std::isfinite(trial.monitor) || trial.monitor > cur.monitor) {
      dt *= 0.5;
      accepted_run = 0;
      continue;
    }
    s = std::move(next);
    cur = std::move(trial);
    t += h;
    ++step;
    result.trace.push_back({static_cast<int>(step), t, sup_norm(cur.r), cur.monitor, h});
    if (++accepted_run >= config.grow_after) {
      dt = std::min(dt * config.grow, config.dt_max);
      accepted_run = 0;
    }
  }
}

}  // namespace gcp
