#include <random>

#include "doctest.h"
#include "gcp/analysis.hpp"
#include "gcp/error.hpp"
#include "gcp/fixtures.hpp"

using namespace gcp;

namespace {

struct Instance {
  Triangulation mesh;
  BoundaryData boundary;
  Target target;
};

Instance make_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto m = random_annulus(2, 4, 7, rng);
  auto b = random_boundary(m, 0.3, 3.0, rng);
  auto t = forward_target(m, b, random_log_curvatures(m, -1, 1, rng));
  return {std::move(m), std::move(b), std::move(t)};
}

PackingPair solve_pair(const Instance& in, const BoundaryData& star) {
  Packing p{in.boundary, in.target, newton_solve(in.mesh, in.boundary, in.target)};
  Packing q{star, in.target, newton_solve(in.mesh, star, in.target)};
  return make_packing_pair(in.mesh, std::move(p), std::move(q));
}

}  // namespace

TEST_CASE("identical boundary data ties everywhere") {
  const auto in = make_instance(1);
  const auto pair = solve_pair(in, in.boundary);
  const auto mp = max_principle_check(pair);
  CHECK(mp.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mp.boundary_ordered);
  CHECK(mp.ordered.value());
  CHECK(mp.violations.empty());
  const auto rep = schwarz_pick_report(pair);
  for (const auto& row : rep.faces) {
    CHECK(row.area == row.area_star);
    CHECK(row.area_ok);
  }
  CHECK(rep.arc_violations == 0);
  CHECK(dual_monotonicity_check(pair));
}

TEST_CASE("shrinking the boundary enlarges faces and arcs") {
  for (std::uint64_t seed = 2; seed < 6; ++seed) {
    const auto in = make_instance(seed);
    for (double c : {0.5, 0.7}) {
      const auto pair = solve_pair(in, BoundaryData{c * in.boundary.k_hat});
      const auto mp = max_principle_check(pair);
      CHECK(mp.ordered.value());
      CHECK(mp.violations.empty());
      std::mt19937_64 rng(seed);
      std::vector<ArcChain> chains;
      for (int i = 0; i < 5; ++i) chains.push_back(random_chain(in.mesh, 3, rng));
      const auto rep = schwarz_pick_report(pair, chains);
      CHECK(rep.area_violations == 0);
      CHECK(rep.arc_violations == 0);
      CHECK(rep.chain_violations == 0);
      for (const auto& row : rep.faces) CHECK(row.dual_ok);
      CHECK(dual_monotonicity_check(pair));
    }
  }
}

TEST_CASE("mixed boundary perturbation: only part (a) is asserted") {
  const auto in = make_instance(7);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> f(0.5, 1.5);
  BoundaryData star = in.boundary;
  for (auto& k : star.k_hat) k *= f(rng);
  const auto pair = solve_pair(in, star);
  const auto mp = max_principle_check(pair);
  CHECK_FALSE(mp.boundary_ordered);
  CHECK_FALSE(mp.ordered.has_value());
  CHECK(mp.max_on_boundary);
  CHECK_THROWS_AS(schwarz_pick_report(pair), Error);
}

TEST_CASE("pair validation and chains") {
  const auto in = make_instance(8);
  Packing p{in.boundary, in.target, newton_solve(in.mesh, in.boundary, in.target)};
  Packing other = p;
  other.target.T_hat[0] += 0.01;
  try {
    make_packing_pair(in.mesh, p, other);
    FAIL("expected TargetMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TargetMismatch);
  }
  Packing unconverged = p;
  unconverged.result.converged = false;
  CHECK_THROWS_AS(make_packing_pair(in.mesh, p, unconverged), Error);

  const auto& f0 = in.mesh.face(0);
  CHECK_NOTHROW(validate_chain(in.mesh, {{0, f0.v[0]}, {0, f0.v[1]}}));
  CHECK_THROWS_AS(validate_chain(in.mesh, {{0, f0.v[0]}, {0, f0.v[0]}}), Error);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) CHECK_NOTHROW(validate_chain(in.mesh, random_chain(in.mesh, 6, rng)));
}

TEST_CASE("dual monotonicity on a single face") {
  CHECK(dual_curvature(1, 1, 1) <= dual_curvature(2, 2, 2));
}

TEST_CASE("dual monotonicity requires vertex ordering") {
  const auto in = make_instance(9);
  const auto pair = solve_pair(in, BoundaryData{1.3 * in.boundary.k_hat});
  CHECK_THROWS_AS(dual_monotonicity_check(pair), Error);
}
