#include "gcp/layout.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "gcp/error.hpp"
#include "gcp/geometry.hpp"

namespace gcp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxIterations = 200;
constexpr double kConvergedResidual = 1e-9;

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a <= -kPi ? a + kTwoPi : a;
}

DiskCircleKind kind_of(double k) {
  switch (classify(k)) {
    case CircleKind::Hypercycle: return DiskCircleKind::Hypercycle;
    case CircleKind::Horocycle: return DiskCircleKind::Horocycle;
    case CircleKind::Circle: break;
  }
  return DiskCircleKind::Circle;
}

// Arc angle on the dual circle covered by each slot's circle.
std::array<double, 3> gaps(double theta1, double theta2) {
  return {theta2 - theta1, kTwoPi - theta2, theta1};
}

bool admissible(double theta1, double theta2) {
  for (double g : gaps(theta1, theta2))
    if (!(g > 0.0 && g < kPi)) return false;
  return true;
}

// Circle through two points of the origin-centered dual circle (radius R),
// orthogonal to it: its center is where the tangent lines at the points meet.
DiskCircle orthogonal_circle(double R, double alpha, double beta) {
  const double half = 0.5 * (beta - alpha);
  const double mid = 0.5 * (alpha + beta);
  const double dist = R / std::cos(half);
  DiskCircle c;
  c.center = Point(dist * std::cos(mid), dist * std::sin(mid));
  c.radius = (c.center - Point(R * std::cos(alpha), R * std::sin(alpha))).norm();
  return c;
}

struct Placement {
  std::array<DiskCircle, 3> circles;
  std::array<double, 3> log_residual{};
  double residual = 0.0;
};

Placement place(const std::array<double, 3>& k, double R, double theta1, double theta2) {
  const std::array<double, 3> theta{0.0, theta1, theta2};
  Placement p;
  for (int v = 0; v < 3; ++v) {
    const double a = theta[(v + 1) % 3];
    double b = theta[(v + 2) % 3];
    if (b < a) b += kTwoPi;
    p.circles[v] = orthogonal_circle(R, a, b);
    p.circles[v].kind = kind_of(k[v]);
    const double rec = recovered_curvature(p.circles[v]);
    p.log_residual[v] = std::log(rec) - std::log(k[v]);
    p.residual = std::max(p.residual, std::abs(rec - k[v]) / std::max(1.0, k[v]));
  }
  return p;
}

// 1 - |x|^2 for x = c + ρ(cos ψ, sin ψ), written around the direction facing
// the origin (β = 0) so large hypercycles do not lose digits.
double one_minus_norm2(const DiskCircle& c, double psi) {
  const double dist = c.center.norm();
  const double facing = std::atan2(-c.center.y(), -c.center.x());
  const double half_beta = 0.5 * wrap_angle(psi - facing);
  const double gap = dist - c.radius;
  const double sb = std::sin(half_beta);
  return (1.0 - gap) * (1.0 + gap) - 4.0 * c.radius * dist * sb * sb;
}

double hyperbolic_arc_length(const DiskCircle& c, double psi0, double dpsi) {
  auto integrand = [&](double psi) { return 2.0 * c.radius / one_minus_norm2(c, psi); };
  using boost::math::quadrature::gauss_kronrod;
  return std::abs(gauss_kronrod<double, 61>::integrate(integrand, psi0, psi0 + dpsi, 12, 1e-12));
}

// Signed ∮ 2(x dy - y dx)/(1-|x|^2) along the arc of c from angle psi0 by dpsi.
double green_arc(const DiskCircle& c, double psi0, double dpsi) {
  auto integrand = [&](double psi) {
    const double cross =
        c.radius * (c.center.x() * std::cos(psi) + c.center.y() * std::sin(psi)) + c.radius * c.radius;
    return 2.0 * cross / one_minus_norm2(c, psi);
  };
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(integrand, psi0, psi0 + dpsi, 12, 1e-12);
}

// Start angle (around the circle's center) and signed sweep of the minor arc from p to q.
std::pair<double, double> minor_arc(const DiskCircle& c, const Point& p, const Point& q) {
  const double a = std::atan2(p.y() - c.center.y(), p.x() - c.center.x());
  const double b = std::atan2(q.y() - c.center.y(), q.x() - c.center.x());
  return {a, wrap_angle(b - a)};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

const char* color_of(DiskCircleKind kind) {
  switch (kind) {
    case DiskCircleKind::Hypercycle: return "#1f77b4";
    case DiskCircleKind::Horocycle: return "#2ca02c";
    case DiskCircleKind::Circle: return "#d62728";
    case DiskCircleKind::Dual: return "#555555";
  }
  return "#000000";
}

}  // namespace

double recovered_curvature(const DiskCircle& c) {
  return std::abs(1.0 - c.center.squaredNorm() + c.radius * c.radius) / (2.0 * c.radius);
}

FaceLayout layout_face(double k1, double k2, double k3) {
  FaceLayout out;
  out.k = {k1, k2, k3};
  out.k_f = dual_curvature(k1, k2, k3);
  // Euclidean radius tanh(r_f/2) of the dual circle, r_f = arccoth k_f.
  const double q = k1 * k2 + k2 * k3 + k1 * k3;
  const double R = 1.0 / (out.k_f + std::sqrt(q));
  out.dual.radius = R;
  out.dual.kind = DiskCircleKind::Dual;

  double t1 = kTwoPi / 3.0;
  double t2 = 2.0 * kTwoPi / 3.0;
  Placement cur = place(out.k, R, t1, t2);
  int iter = 0;
  for (; iter < kMaxIterations && cur.residual > 1e-15; ++iter) {
    // d ln k_rec / d gap = -1 / sin(gap); gaps are (t2-t1, 2π-t2, t1).
    const auto g = gaps(t1, t2);
    std::array<double, 3> dlog{};
    for (int v = 0; v < 3; ++v) dlog[v] = -1.0 / std::sin(g[v]);
    Eigen::Matrix<double, 3, 2> J;
    J << -dlog[0], dlog[0],
         0.0, -dlog[1],
         dlog[2], 0.0;
    const Eigen::Vector3d r(cur.log_residual[0], cur.log_residual[1], cur.log_residual[2]);
    const Eigen::Vector2d step = (J.transpose() * J).ldlt().solve(-J.transpose() * r);

    double lambda = 1.0;
    bool improved = false;
    for (int back = 0; back < 60; ++back, lambda *= 0.5) {
      const double n1 = t1 + lambda * step[0];
      const double n2 = t2 + lambda * step[1];
      if (!admissible(n1, n2)) continue;
      Placement trial = place(out.k, R, n1, n2);
      const Eigen::Vector3d tr(trial.log_residual[0], trial.log_residual[1], trial.log_residual[2]);
      if (tr.norm() < r.norm()) {
        t1 = n1;
        t2 = n2;
        cur = trial;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(cur.residual <= kConvergedResidual))
    throw Error(ErrorKind::LayoutNotConverged,
                "curvature residual " + std::to_string(cur.residual) + " after " +
                    std::to_string(iter) + " iterations");

  out.circles = cur.circles;
  out.tangent_angles = {0.0, t1, t2};
  for (int a = 0; a < 3; ++a)
    out.tangent_points[a] =
        Point(R * std::cos(out.tangent_angles[a]), R * std::sin(out.tangent_angles[a]));
  out.iterations = iter;
  out.residual = cur.residual;
  return out;
}

double measure_subarc(const FaceLayout& layout, int slot) {
  const auto& c = layout.circles.at(static_cast<std::size_t>(slot));
  const auto [psi0, dpsi] = minor_arc(c, layout.tangent_points[(slot + 1) % 3],
                                      layout.tangent_points[(slot + 2) % 3]);
  return hyperbolic_arc_length(c, psi0, dpsi);
}

double measure_dual_circumference(const FaceLayout& layout) {
  return hyperbolic_arc_length(layout.dual, 0.0, kTwoPi);
}

double measure_region_area(const FaceLayout& layout) {
  // Boundary cycle p0 -> p1 -> p2 -> p0 along circles 2, 0, 1.
  double total = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int slot = (a + 2) % 3;
    const auto [psi0, dpsi] =
        minor_arc(layout.circles[slot], layout.tangent_points[a], layout.tangent_points[(a + 1) % 3]);
    total += green_arc(layout.circles[slot], psi0, dpsi);
  }
  return std::abs(total);
}

LayoutResiduals layout_residuals(const FaceLayout& layout) {
  LayoutResiduals r;
  const double rd = layout.dual.radius;
  for (int v = 0; v < 3; ++v) {
    const auto& c = layout.circles[v];
    r.curvature = std::max(r.curvature, std::abs(recovered_curvature(c) - layout.k[v]) /
                                            std::max(1.0, layout.k[v]));
    r.orthogonality = std::max(
        r.orthogonality, std::abs((c.center - layout.dual.center).squaredNorm() - c.radius * c.radius -
                                  rd * rd));
    const auto& w = layout.circles[(v + 1) % 3];
    r.tangency = std::max(r.tangency, std::abs((c.center - w.center).norm() - (c.radius + w.radius)));
    // Circle v must pass through both of its tangent points.
    for (int a : {(v + 1) % 3, (v + 2) % 3})
      r.tangency =
          std::max(r.tangency, std::abs((layout.tangent_points[a] - c.center).norm() - c.radius));
    if (c.kind == DiskCircleKind::Horocycle)
      r.horocycle = std::max(r.horocycle, std::abs(1.0 - c.center.norm() - c.radius));
  }
  return r;
}

std::string render_svg(std::span<const FaceLayout> layouts, const SvgOptions& options) {
  std::ostringstream os;
  const std::string sw = fmt(options.stroke_width);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(options.size_px)
     << "\" height=\"" << fmt(options.size_px) << "\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
  if (!options.title.empty()) os << "  <title>" << options.title << "</title>\n";
  os << "  <defs><clipPath id=\"disk\"><circle cx=\"0\" cy=\"0\" r=\"1\"/></clipPath></defs>\n"
     << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"#f7f7f7\" stroke=\"#000000\" stroke-width=\""
     << sw << "\"/>\n";
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    const auto& lay = layouts[i];
    os << "  <g id=\"face-" << i << "\" transform=\"scale(1,-1)\" clip-path=\"url(#disk)\">\n";
    os << "    <circle cx=\"" << fmt(lay.dual.center.x()) << "\" cy=\"" << fmt(lay.dual.center.y())
       << "\" r=\"" << fmt(lay.dual.radius) << "\" fill=\"none\" stroke=\""
       << color_of(DiskCircleKind::Dual) << "\" stroke-width=\"" << sw
       << "\" stroke-dasharray=\"0.03,0.02\"/>\n";
    for (const auto& c : lay.circles)
      os << "    <circle cx=\"" << fmt(c.center.x()) << "\" cy=\"" << fmt(c.center.y()) << "\" r=\""
         << fmt(c.radius) << "\" fill=\"none\" stroke=\"" << color_of(c.kind)
         << "\" stroke-width=\"" << sw << "\"/>\n";
    if (options.mark_tangent_points)
      for (const auto& p : lay.tangent_points)
        os << "    <circle cx=\"" << fmt(p.x()) << "\" cy=\"" << fmt(p.y()) << "\" r=\""
           << fmt(3.0 * options.stroke_width) << "\" fill=\"#000000\"/>\n";
    os << "  </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace gcp
