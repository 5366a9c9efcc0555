#pragma once

#include <array>

namespace gcp {

/// Generalized circle type by geodesic curvature.
enum class CircleKind { Hypercycle, Horocycle, Circle };

CircleKind classify(double k);

/// Hyperbolic radius of a generalized circle; +inf for a horocycle.
double radius(double k);

/// Length of the geodesic joining the centers of two tangent generalized circles.
double edge_length(double k_i, double k_j);

/// Curvature of the circle through the three tangent points of a face packing.
/// k_f^2 = k1 k2 + k2 k3 + k1 k3 + 1.
double dual_curvature(double k1, double k2, double k3);

/// Length of the sub-arc of a generalized circle of curvature k_v lying inside
/// the dual circle of curvature k_f, with both partial derivatives.
struct ArcLength {
  double value = 0.0;
  double d_kv = 0.0;
  double d_kf = 0.0;
};

ArcLength arc_length_with_partials(double k_v, double k_f);
double arc_length(double k_v, double k_f);

/// T_v^f = k_v * l_v^f.
double total_curvature(double k_v, double k_f);

/// Everything the solver and the comparison reports need from one face.
struct FaceGeometry {
  std::array<double, 3> k{};  // input curvatures, face slot order
  double k_f = 0.0;
  std::array<double, 3> l{};
  std::array<double, 3> T{};
  double area = 0.0;
  /// dT_ds[v][u] = ∂T_v/∂s_u with s = ln k.
  std::array<std::array<double, 3>, 3> dT_ds{};
};

FaceGeometry face_geometry(double k1, double k2, double k3);

/// Only the three totals, skipping the Jacobian.
std::array<double, 3> face_totals(double k1, double k2, double k3);

}  // namespace gcp
