#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "gcp/error.hpp"
#include "gcp/geometry.hpp"
#include "gcp/mesh.hpp"

namespace gcp {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Prescribed curvatures k̂ on V∂, indexed by boundary_index.
struct BoundaryData {
  Vector k_hat;
};

/// Prescribed interior totals T̂ on V°, indexed by interior_index.
struct Target {
  Vector T_hat;
};

/// T(s), its Jacobian M = ∂T/∂s and the per-face geometry at one state.
struct Assembly {
  Vector T;
  SparseMatrix M;
  std::vector<FaceGeometry> faces;
};

/// Full curvature assignment on V: boundary from k̂, interior = exp(s).
std::vector<double> full_curvatures(const Triangulation& mesh, const BoundaryData& boundary,
                                    const Vector& s);

Assembly assemble(const Triangulation& mesh, const BoundaryData& boundary, const Vector& s);

/// Interior totals only.
Vector interior_totals(const Triangulation& mesh, const BoundaryData& boundary, const Vector& s);

/// max |M_ij - M_ji| / max |M_ij|.
double symmetry_defect(const SparseMatrix& m);

/// min_i (M_ii - Σ_{j≠i} |M_ij|).
double dominance_margin(const SparseMatrix& m);

/// Θ(s) = ∫ Σ (T_i - T̂_i) ds_i along the straight segment from reference_s to s,
/// by Gauss-Legendre quadrature (32 nodes unless overridden).
double potential_energy(const Triangulation& mesh, const BoundaryData& boundary,
                        const Target& target, const Vector& s, const Vector& reference_s,
                        int nodes = 32);

struct TraceRow {
  int step = 0;
  double time = 0.0;
  double residual_inf = 0.0;
  double energy_monitor = 0.0;
  double dt = 0.0;
};

struct SolveResult {
  Vector s;
  std::vector<double> k;
  std::vector<FaceGeometry> faces;
  Vector T;
  double residual_inf = 0.0;
  int iterations = 0;
  double time = 0.0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

/// Raised when a solve exhausts its budget; carries the partial result and trace.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, SolveResult partial)
      : Error(ErrorKind::NotConverged, what), partial_(std::move(partial)) {}
  const SolveResult& partial() const { return partial_; }

 private:
  SolveResult partial_;
};

struct NewtonConfig {
  double tol = 1e-10;
  int max_iter = 100;
  std::optional<Vector> initial_s;  // default: zeros (all interior horocycles)
  bool check_feasibility = false;
  double armijo_c = 1e-4;
  double min_step = 0x1p-30;
};

enum class Integrator { Euler, Rk4 };

struct FlowConfig {
  double tol = 1e-10;
  double t_max = 1e5;
  long max_steps = 2'000'000;
  Integrator integrator = Integrator::Rk4;
  double dt_init = 0.05;
  double dt_max = 10.0;
  double dt_min = 1e-14;
  double grow = 1.2;
  int grow_after = 10;
  std::optional<Vector> initial_s;
  bool check_feasibility = false;
};

/// Damped Newton on the convex potential Θ with Armijo backtracking.
SolveResult newton_solve(const Triangulation& mesh, const BoundaryData& boundary,
                         const Target& target, const NewtonConfig& config = {});

/// Adaptive integration of ds/dt = -M (T - T̂). The monitor (T-T̂)ᵀM(T-T̂)
/// never increases across accepted steps.
SolveResult calabi_flow(const Triangulation& mesh, const BoundaryData& boundary,
                        const Target& target, const FlowConfig& config = {});

}  // namespace gcp
