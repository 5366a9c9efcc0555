#pragma once

// Test-only reference formulas, kept independent of the library's code paths.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>
#include <random>

#include "gcp/geometry.hpp"

namespace oracle {

using std::atan;
using std::log;
using std::sqrt;

/// 50 significant digits, for evaluating formulas that cancel badly in double.
using Real = boost::multiprecision::cpp_bin_float_50;

template <class R>
R atanh_(const R& x) {
  return log((1 + x) / (1 - x)) / 2;
}

/// Sub-arc length from the three closed-form branches.
template <class R>
R closed_arc(const R& kv, const R& kf) {
  if (kv < 1) {
    const R b = sqrt(1 - kv * kv);
    return 2 / b * atanh_(R(b / kf));
  }
  if (kv == 1) return 2 / kf;
  const R a = sqrt(kv * kv - 1);
  return 2 / a * atan(a / kf);
}

/// ∂l/∂k_v exactly as printed in closed form (three branches).
template <class R>
R printed_dl_dkv(const R& kv, const R& kf) {
  if (kv < 1) {
    const R b = sqrt(1 - kv * kv);
    return -2 * kv / ((1 - kv * kv) * b) * (kf * b / (kv * kv + kf * kf - 1) - atanh_(R(b / kf)));
  }
  if (kv == 1) return R(-4) / 3 / (kf * kf * kf);
  const R a = sqrt(kv * kv - 1);
  return 2 * kv / ((kv * kv - 1) * a) * (kf * a / (kv * kv + kf * kf - 1) - atan(a / kf));
}

inline double printed_dl_dkv(double kv, double kf) { return printed_dl_dkv<double>(kv, kf); }

/// ∂l/∂k_f as printed.
template <class R>
R printed_dl_dkf(const R& kv, const R& kf) {
  return 2 / (1 - kv * kv - kf * kf);
}

inline double printed_dl_dkf(double kv, double kf) { return printed_dl_dkf<double>(kv, kf); }

/// Central difference of f at x with step h.
inline double central(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Log-uniform sample in [lo, hi].
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

/// T_v of a face as a function of the three log-curvatures.
inline std::array<double, 3> totals_at_s(const std::array<double, 3>& s) {
  return gcp::face_totals(std::exp(s[0]), std::exp(s[1]), std::exp(s[2]));
}

}  // namespace oracle
