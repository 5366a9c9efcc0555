#include "gcp/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gcp/error.hpp"

namespace gcp {

Triangulation annulus(const std::vector<int>& ring_sizes, const std::vector<double>& offsets) {
  if (ring_sizes.size() < 3)
    throw Error(ErrorKind::InvalidInput, "an annulus needs two boundary rings and one interior ring");
  if (!offsets.empty() && offsets.size() != ring_sizes.size())
    throw Error(ErrorKind::InvalidInput, "one offset per ring");

  std::vector<int> first(ring_sizes.size());
  int total = 0;
  for (std::size_t r = 0; r < ring_sizes.size(); ++r) {
    if (ring_sizes[r] < 3) throw Error(ErrorKind::InvalidInput, "rings need at least 3 vertices");
    first[r] = total;
    total += ring_sizes[r];
  }
  auto angle = [&](std::size_t r, int i) {
    const double off = offsets.empty() ? 0.0 : offsets[r];
    return 2.0 * std::numbers::pi * (i + off) / ring_sizes[r];
  };

  std::vector<Face> faces;
  for (std::size_t r = 0; r + 1 < ring_sizes.size(); ++r) {
    const int a = ring_sizes[r], b = ring_sizes[r + 1];
    auto A = [&](int i) { return first[r] + i % a; };
    auto B = [&](int j) { return first[r + 1] + j % b; };
    int i = 0, j = 0;
    while (i < a || j < b) {
      const bool advance_a = j == b || (i < a && angle(r, i + 1) <= angle(r + 1, j + 1));
      if (advance_a) {
        faces.push_back({{A(i), A(i + 1), B(j)}});
        ++i;
      } else {
        faces.push_back({{A(i), B(j + 1), B(j)}});
        ++j;
      }
    }
  }
  return Triangulation::build(static_cast<std::size_t>(total), std::move(faces));
}

Triangulation random_annulus(int interior_rings, int min_size, int max_size, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(min_size, max_size);
  std::uniform_real_distribution<double> offset(0.0, 0.5);
  std::vector<int> sizes;
  std::vector<double> offsets;
  for (int r = 0; r < interior_rings + 2; ++r) {
    sizes.push_back(size(rng));
    offsets.push_back(offset(rng));
  }
  return annulus(sizes, offsets);
}

Triangulation wheel(int n) {
  std::vector<Face> faces;
  for (int i = 0; i < n; ++i) faces.push_back({{0, 1 + i, 1 + (i + 1) % n}});
  return Triangulation::build(static_cast<std::size_t>(n + 1), std::move(faces));
}

Triangulation torus(int m, int n) {
  auto id = [&](int i, int j) { return ((i % m + m) % m) * n + (j % n + n) % n; };
  std::vector<Face> faces;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      faces.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}});
      faces.push_back({{id(i, j), id(i + 1, j + 1), id(i, j + 1)}});
    }
  }
  return Triangulation::build(static_cast<std::size_t>(m * n), std::move(faces));
}

BoundaryData random_boundary(const Triangulation& mesh, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  BoundaryData b;
  b.k_hat.resize(static_cast<Eigen::Index>(mesh.num_boundary()));
  for (auto& k : b.k_hat) k = std::exp(u(rng));
  return b;
}

Vector random_log_curvatures(const Triangulation& mesh, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector s(static_cast<Eigen::Index>(mesh.num_interior()));
  for (auto& x : s) x = u(rng);
  return s;
}

Target forward_target(const Triangulation& mesh, const BoundaryData& boundary, const Vector& s) {
  return Target{interior_totals(mesh, boundary, s)};
}

}  // namespace gcp
