#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string>

namespace gcp {

using Point = Eigen::Vector2d;

enum class DiskCircleKind { Hypercycle, Horocycle, Circle, Dual };

/// A generalized circle drawn as a Euclidean circle in the Poincaré disk.
struct DiskCircle {
  Point center = Point::Zero();
  double radius = 0.0;
  DiskCircleKind kind = DiskCircleKind::Circle;
};

/// Unsigned geodesic curvature of a Euclidean circle in the disk:
/// |1 - |c|^2 + ρ^2| / (2ρ).
double recovered_curvature(const DiskCircle& c);

/// One face packing in the disk. The dual circle is centered at the origin and
/// tangent point 0 sits at angle 0. Tangent point a is where the circles in the
/// two other slots touch, so circle v passes through points v+1 and v+2.
struct FaceLayout {
  std::array<double, 3> k{};
  double k_f = 0.0;
  DiskCircle dual;
  std::array<DiskCircle, 3> circles;
  std::array<Point, 3> tangent_points;
  std::array<double, 3> tangent_angles{};
  int iterations = 0;
  double residual = 0.0;  // max relative curvature mismatch at the solution
};

/// Places the packing by damped Gauss-Newton on the two free tangent angles.
/// Throws LayoutNotConverged if the curvature residual stays above 1e-9.
FaceLayout layout_face(double k1, double k2, double k3);

/// Hyperbolic length of circle `slot` between its two tangent points (the arc
/// inside the dual circle), by adaptive quadrature of 2|dx|/(1-|x|^2).
double measure_subarc(const FaceLayout& layout, int slot);

/// Hyperbolic circumference of the dual circle by the same quadrature.
double measure_dual_circumference(const FaceLayout& layout);

/// Hyperbolic area of the region bounded by the three sub-arcs, by Green's
/// theorem with the 1-form 2(x dy - y dx)/(1-|x|^2).
double measure_region_area(const FaceLayout& layout);

struct LayoutResiduals {
  double curvature = 0.0;      // max |k_rec - k| / max(1, k)
  double tangency = 0.0;       // max ||c_v - c_w| - (ρ_v + ρ_w)| and point-on-circle error
  double orthogonality = 0.0;  // max ||c_v|^2 - ρ_v^2 - ρ_dual^2|
  double horocycle = 0.0;      // max |1 - |c| - ρ| over horocycles
};

LayoutResiduals layout_residuals(const FaceLayout& layout);

struct SvgOptions {
  double size_px = 512.0;
  double stroke_width = 0.006;  // in disk units
  bool mark_tangent_points = true;
  std::string title;
};

/// SVG 1.1 document: unit disk, each layout's circles clipped to the disk,
/// dashed dual circles and tangent point markers.
std::string render_svg(std::span<const FaceLayout> layouts, const SvgOptions& options = {});

}  // namespace gcp
