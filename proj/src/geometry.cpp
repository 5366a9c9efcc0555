#include "gcp/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gcp/error.hpp"

namespace gcp {

namespace {

// Below this value of |k_v^2 - 1| / k_f^2 the branch formulas lose digits to
// cancellation and the power series in u = k_v^2 - 1 takes over.
constexpr double kSeriesThreshold = 1e-4;

void require_curvature(double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error(ErrorKind::NonPositiveCurvature, "curvature " + std::to_string(k));
}

// l = (2/k_f) Σ x^n/(2n+1), x = -u/k_f^2.
ArcLength arc_series(double k_v, double u, double k_f) {
  const double kf2 = k_f * k_f;
  const double x = -u / kf2;
  double sum = 0.0;
  double dsum = 0.0;  // Σ n x^(n-1)/(2n+1)
  double xn = 1.0;
  double xnm1 = 0.0;
  for (int n = 0; n < 64; ++n) {
    const double term = xn / (2 * n + 1);
    sum += term;
    if (n > 0) dsum += n * xnm1 / (2 * n + 1);
    if (n > 0 && std::abs(term) < 1e-17 * std::abs(sum)) break;
    xnm1 = xn;
    xn *= x;
  }
  ArcLength out;
  out.value = 2.0 / k_f * sum;
  const double dl_du = 2.0 / k_f * dsum * (-1.0 / kf2);
  out.d_kv = 2.0 * k_v * dl_du;
  out.d_kf = 2.0 / (1.0 - k_v * k_v - kf2);
  return out;
}

}  // namespace

CircleKind classify(double k) {
  require_curvature(k);
  if (k < 1.0) return CircleKind::Hypercycle;
  if (k > 1.0) return CircleKind::Circle;
  return CircleKind::Horocycle;
}

double radius(double k) {
  switch (classify(k)) {
    case CircleKind::Hypercycle: return std::atanh(k);
    case CircleKind::Circle: return std::atanh(1.0 / k);
    case CircleKind::Horocycle: break;
  }
  return std::numeric_limits<double>::infinity();
}

double edge_length(double k_i, double k_j) { return radius(k_i) + radius(k_j); }

double dual_curvature(double k1, double k2, double k3) {
  require_curvature(k1);
  require_curvature(k2);
  require_curvature(k3);
  return std::sqrt(k1 * k2 + k2 * k3 + k1 * k3 + 1.0);
}

ArcLength arc_length_with_partials(double k_v, double k_f) {
  require_curvature(k_v);
  if (!(k_f > 1.0) || !std::isfinite(k_f))
    throw Error(ErrorKind::DualCurvatureOutOfRange, "k_f = " + std::to_string(k_f));

  const double u = (k_v - 1.0) * (k_v + 1.0);
  const double kf2 = k_f * k_f;
  if (std::abs(u) / kf2 < kSeriesThreshold) return arc_series(k_v, u, k_f);

  ArcLength out;
  out.d_kf = 2.0 / (1.0 - k_v * k_v - kf2);
  if (u > 0.0) {
    const double a = std::sqrt(u);
    const double angle = std::atan(a / k_f);
    out.value = 2.0 / a * angle;
    out.d_kv = 2.0 * k_v / (u * a) * (k_f * a / (u + kf2) - angle);
  } else {
    const double b = std::sqrt(-u);
    const double h = std::atanh(b / k_f);
    out.value = 2.0 / b * h;
    out.d_kv = -2.0 * k_v / (-u * b) * (k_f * b / (u + kf2) - h);
  }
  return out;
}

double arc_length(double k_v, double k_f) { return arc_length_with_partials(k_v, k_f).value; }

double total_curvature(double k_v, double k_f) { return k_v * arc_length(k_v, k_f); }

std::array<double, 3> face_totals(double k1, double k2, double k3) {
  const double kf = dual_curvature(k1, k2, k3);
  return {total_curvature(k1, kf), total_curvature(k2, kf), total_curvature(k3, kf)};
}

FaceGeometry face_geometry(double k1, double k2, double k3) {
  FaceGeometry g;
  g.k = {k1, k2, k3};
  g.k_f = dual_curvature(k1, k2, k3);

  std::array<ArcLength, 3> arcs;
  std::array<double, 3> dkf_dk{};
  for (int v = 0; v < 3; ++v) {
    arcs[v] = arc_length_with_partials(g.k[v], g.k_f);
    g.l[v] = arcs[v].value;
    g.T[v] = g.k[v] * g.l[v];
    dkf_dk[v] = (g.k[(v + 1) % 3] + g.k[(v + 2) % 3]) / (2.0 * g.k_f);
  }
  g.area = std::numbers::pi - (g.T[0] + g.T[1] + g.T[2]);

  for (int v = 0; v < 3; ++v) {
    for (int u = 0; u < 3; ++u) {
      double dT_dku = g.k[v] * arcs[v].d_kf * dkf_dk[u];
      if (u == v) dT_dku += g.l[v] + g.k[v] * arcs[v].d_kv;
      g.dT_ds[v][u] = g.k[u] * dT_dku;
    }
  }
  return g;
}

}  // namespace gcp
