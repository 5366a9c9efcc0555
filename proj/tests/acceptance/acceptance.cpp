// Acceptance runner. `acceptance N` checks criterion N, `acceptance` checks all.
// Each criterion prints exactly one PASS/FAIL line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gcp/analysis.hpp"
#include "gcp/feasibility.hpp"
#include "gcp/fixtures.hpp"
#include "gcp/geometry.hpp"
#include "gcp/layout.hpp"
#include "gcp/solver.hpp"
#include "oracles.hpp"

using namespace gcp;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string cli_path, fixture_dir;

// 1. Finite differences of the closed-form arc length against the printed partials,
// both in 50-digit arithmetic; then the double-precision kernel against both.
Outcome kernel_derivatives() {
  using oracle::Real;
  std::mt19937_64 rng(101);
  double fd_kv = 0.0, fd_kf = 0.0, lib = 0.0;
  const Real h = Real(1) / Real("1e20");
  for (int i = 0; i < 10000; ++i) {
    const double kv = oracle::log_uniform(rng, 1e-3, 1e3);
    const double kf = 1.0 + oracle::log_uniform(rng, 1e-3, 1e3);
    const Real v(kv), f(kf);
    const Real dv = (oracle::closed_arc(Real(v + v * h), f) - oracle::closed_arc(Real(v - v * h), f)) / (2 * v * h);
    const Real df = (oracle::closed_arc(v, Real(f + f * h)) - oracle::closed_arc(v, Real(f - f * h))) / (2 * f * h);
    const Real pv = oracle::printed_dl_dkv(v, f), pf = oracle::printed_dl_dkf(v, f);
    fd_kv = std::max(fd_kv, static_cast<double>(abs((dv - pv) / pv)));
    fd_kf = std::max(fd_kf, static_cast<double>(abs((df - pf) / pf)));

    const auto k = arc_length_with_partials(kv, kf);
    lib = std::max({lib, rel_err(k.value, static_cast<double>(oracle::closed_arc(v, f))),
                    rel_err(k.d_kv, static_cast<double>(pv)), rel_err(k.d_kf, static_cast<double>(pf))});
  }
  double branch = 0.0;
  for (double kf : {1.01, 1.5, 2.0, 5.0, 30.0, 400.0}) {
    for (double kv : {1.0 - 1e-6, 1.0, 1.0 + 1e-6}) {
      const auto k = arc_length_with_partials(kv, kf);
      const double pv = static_cast<double>(oracle::printed_dl_dkv(oracle::Real(kv), oracle::Real(kf)));
      const double l = static_cast<double>(oracle::closed_arc(oracle::Real(kv), oracle::Real(kf)));
      branch = std::max({branch, rel_err(k.d_kv, pv), rel_err(k.value, l)});
    }
  }
  Outcome o;
  o.pass = fd_kv < 1e-6 && fd_kf < 1e-6 && lib < 1e-6 && branch < 1e-9;
  o.detail = "fd d/dk_v " + fmt("%.2e", fd_kv) + ", fd d/dk_f " + fmt("%.2e", fd_kf) +
             ", kernel " + fmt("%.2e", lib) + ", branch " + fmt("%.2e", branch);
  return o;
}

struct Instance {
  Triangulation mesh;
  BoundaryData boundary;
  Vector s;
  Target target;
};

Instance random_instance(std::mt19937_64& rng, std::size_t min_interior, std::size_t max_interior,
                         double s_range) {
  std::uniform_int_distribution<int> rings(1, 4);
  for (;;) {
    auto mesh = random_annulus(rings(rng), 4, 12, rng);
    if (mesh.num_interior() < min_interior || mesh.num_interior() > max_interior) continue;
    auto b = random_boundary(mesh, 0.1, 10.0, rng);
    auto s = random_log_curvatures(mesh, -s_range, s_range, rng);
    auto t = forward_target(mesh, b, s);
    return Instance{std::move(mesh), std::move(b), std::move(s), std::move(t)};
  }
}

// 2. Structure of M on random annuli.
Outcome jacobian_structure() {
  std::mt19937_64 rng(202);
  double worst_sym = 0.0, worst_margin = std::numeric_limits<double>::infinity();
  bool signs = true;
  for (int i = 0; i < 100; ++i) {
    auto inst = random_instance(rng, 4, 50, 1.5);
    auto as = assemble(inst.mesh, inst.boundary, inst.s);
    const Eigen::MatrixXd M(as.M);
    worst_sym = std::max(worst_sym, symmetry_defect(as.M));
    worst_margin = std::min(worst_margin, dominance_margin(as.M));
    const auto& interior = inst.mesh.interior_vertices();
    for (std::size_t a = 0; a < interior.size(); ++a) {
      if (!(M(a, a) > 0.0)) signs = false;
      for (std::size_t b = 0; b < interior.size(); ++b) {
        if (a == b) continue;
        const bool edge = !inst.mesh.edge_star(interior[a], interior[b]).empty();
        if (edge ? !(M(a, b) < 0.0) : M(a, b) != 0.0) signs = false;
      }
    }
  }
  Outcome o;
  o.pass = worst_sym <= 1e-10 && signs && worst_margin > 0.0;
  o.detail = "symmetry " + fmt("%.2e", worst_sym) + ", min margin " + fmt("%.3e", worst_margin) +
             (signs ? ", signs ok" : ", sign pattern broken");
  return o;
}

struct RoundTrip {
  double newton_err = 0.0;
  double flow_gap = 0.0;
  double monitor_rise = 0.0;
  bool converged = true;
};

RoundTrip round_trips() {
  std::mt19937_64 rng(303);
  RoundTrip rt;
  for (int i = 0; i < 50; ++i) {
    auto inst = random_instance(rng, 4, 50, 1.0);
    try {
      auto nw = newton_solve(inst.mesh, inst.boundary, inst.target);
      auto fl = calabi_flow(inst.mesh, inst.boundary, inst.target);
      rt.newton_err = std::max(rt.newton_err, (nw.s - inst.s).lpNorm<Eigen::Infinity>());
      rt.flow_gap = std::max(rt.flow_gap, (fl.s - nw.s).lpNorm<Eigen::Infinity>());
      for (std::size_t r = 1; r < fl.trace.size(); ++r) {
        const double prev = fl.trace[r - 1].energy_monitor, cur = fl.trace[r].energy_monitor;
        rt.monitor_rise = std::max(rt.monitor_rise, (cur - prev) / std::max(prev, 1e-300));
      }
    } catch (const Error&) {
      rt.converged = false;
    }
  }
  return rt;
}

// 3. Newton recovers s, flow agrees with Newton.
Outcome homeomorphism() {
  auto rt = round_trips();
  Outcome o;
  o.pass = rt.converged && rt.newton_err < 1e-8 && rt.flow_gap < 1e-8;
  o.detail = "newton |s-s*| " + fmt("%.2e", rt.newton_err) + ", flow vs newton " +
             fmt("%.2e", rt.flow_gap) + (rt.converged ? "" : ", a solve failed");
  return o;
}

// 5. The monitor never rises on accepted flow steps.
Outcome flow_descent() {
  auto rt = round_trips();
  Outcome o;
  o.pass = rt.converged && rt.monitor_rise <= 1e-12;
  o.detail = "largest relative monitor rise " + fmt("%.2e", rt.monitor_rise);
  return o;
}

// 4. Enumeration and max-flow verdicts agree; witnesses really violate.
Outcome feasibility_equivalence() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> inflate(1.0, 2.5);
  std::bernoulli_distribution coin(0.5);
  int agree = 0, infeasible = 0, bad_witness = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = random_instance(rng, 1, 12, 1.5);
    std::vector<double> t(inst.target.T_hat.data(), inst.target.T_hat.data() + inst.target.T_hat.size());
    if (coin(rng)) {
      std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
      const double f = inflate(rng);
      if (coin(rng))
        for (double& x : t) x *= f;
      else
        t[pick(rng)] *= 2.0 * f;
    }
    auto en = check_feasibility(inst.mesh, t, FeasibilityMode::Enumerate);
    auto fl = check_feasibility(inst.mesh, t, FeasibilityMode::Flow);
    if (en.feasible == fl.feasible) ++agree;
    for (const auto* v : {&en, &fl}) {
      if (v->feasible) continue;
      ++infeasible;
      double sum = 0.0;
      for (VertexId w : v->witness) sum += t[inst.mesh.interior_index(w)];
      const double bound = kPi * static_cast<double>(inst.mesh.coverage(v->witness));
      if (v->witness.empty() || sum < bound * (1.0 - 1e-9)) ++bad_witness;
    }
  }
  Outcome o;
  o.pass = agree == 200 && bad_witness == 0;
  o.detail = std::to_string(agree) + "/200 agree, " + std::to_string(infeasible) +
             " infeasible verdicts, " + std::to_string(bad_witness) + " bad witnesses";
  return o;
}

struct Pair {
  Instance inst;
  double c;
  SolveResult base, star;
  BoundaryData star_boundary;
};

std::vector<Pair> scaled_pairs(bool include_unit_scale) {
  std::mt19937_64 rng(606);
  std::vector<Pair> out;
  for (int i = 0; i < 50; ++i) {
    auto inst = random_instance(rng, 4, 40, 1.0);
    auto base = newton_solve(inst.mesh, inst.boundary, inst.target);
    for (double c : {0.5, 0.7, 0.9, 1.0}) {
      if (c == 1.0 && !include_unit_scale) continue;
      BoundaryData sb{c * inst.boundary.k_hat};
      auto star = newton_solve(inst.mesh, sb, inst.target);
      out.push_back(Pair{inst, c, base, std::move(star), sb});
    }
  }
  return out;
}

// 6. Maximum principle, scaled and adversarial.
Outcome maximum_principle() {
  std::size_t violations = 0, scaled = 0;
  for (const auto& p : scaled_pairs(true)) {
    ++scaled;
    for (std::size_t v = 0; v < p.base.k.size(); ++v)
      if (p.star.k[v] > p.base.k[v] * (1.0 + 1e-10)) ++violations;
  }
  std::mt19937_64 rng(616);
  std::uniform_real_distribution<double> factor(0.5, 1.5);
  int above = 0, interior_max = 0;
  for (int i = 0; i < 50; ++i) {
    auto inst = random_instance(rng, 4, 40, 1.0);
    auto base = newton_solve(inst.mesh, inst.boundary, inst.target);
    BoundaryData sb{inst.boundary.k_hat};
    for (Eigen::Index j = 0; j < sb.k_hat.size(); ++j) sb.k_hat[j] *= factor(rng);
    auto star = newton_solve(inst.mesh, sb, inst.target);
    std::vector<double> ratio(base.k.size());
    for (std::size_t v = 0; v < ratio.size(); ++v) ratio[v] = star.k[v] / base.k[v];
    const double mx = *std::max_element(ratio.begin(), ratio.end());
    if (mx <= 1.0 + 1e-12) continue;
    ++above;
    bool boundary_in_band = false;
    for (std::size_t v = 0; v < ratio.size(); ++v)
      if (ratio[v] >= mx - 1e-12 && inst.mesh.is_boundary(static_cast<VertexId>(v))) boundary_in_band = true;
    if (!boundary_in_band) ++interior_max;
  }
  Outcome o;
  o.pass = violations == 0 && interior_max == 0;
  o.detail = std::to_string(scaled) + " scaled pairs, " + std::to_string(violations) +
             " violations; adversarial max>1 in " + std::to_string(above) + "/50, " +
             std::to_string(interior_max) + " interior maxima";
  return o;
}

// 7. Areas, sub-arcs and chain distances grow; dual curvatures shrink.
Outcome schwarz_pick() {
  std::size_t pairs = 0, area_bad = 0, arc_bad = 0, dual_bad = 0, chain_bad = 0, chains = 0;
  std::mt19937_64 rng(707);
  for (auto& p : scaled_pairs(false)) {
    ++pairs;
    const auto& mesh = p.inst.mesh;
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
      const auto& g = p.base.faces[f];
      const auto& gs = p.star.faces[f];
      if (gs.area < g.area * (1.0 - 1e-10)) ++area_bad;
      if (gs.k_f > g.k_f * (1.0 + 1e-10)) ++dual_bad;
      for (int a = 0; a < 3; ++a)
        if (gs.l[a] < g.l[a] * (1.0 - 1e-10)) ++arc_bad;
    }
    std::vector<ArcChain> cs;
    for (int i = 0; i < 10; ++i) cs.push_back(random_chain(mesh, 2 + i % 6, rng));
    auto pair = make_packing_pair(mesh, Packing{p.inst.boundary, p.inst.target, p.base},
                                  Packing{p.star_boundary, p.inst.target, p.star});
    auto report = schwarz_pick_report(pair, cs);
    for (const auto& row : report.chains) {
      ++chains;
      if (row.d_star < row.d * (1.0 - 1e-10)) ++chain_bad;
    }
  }
  Outcome o;
  o.pass = area_bad + arc_bad + dual_bad + chain_bad == 0;
  o.detail = std::to_string(pairs) + " pairs: area " + std::to_string(area_bad) + ", arcs " +
             std::to_string(arc_bad) + ", dual " + std::to_string(dual_bad) + ", chains " +
             std::to_string(chain_bad) + "/" + std::to_string(chains) + " violations";
  return o;
}

// 8. Single-face limits.
Outcome limit_regimes() {
  const double small = face_geometry(1e-8, 1.0, 1.0).T[0];
  const double large = face_geometry(1e8, 1.0, 1.0).T[0];
  const auto big = face_geometry(1e8, 1e8, 1e8);
  const double big_sum = big.T[0] + big.T[1] + big.T[2];
  const auto eq = face_geometry(1.0, 1.0, 1.0);
  double eq_err = std::abs(eq.area - (kPi - 3.0));
  for (double t : eq.T) eq_err = std::max(eq_err, std::abs(t - 1.0));

  const bool a = small < 1e-6, b = large > kPi - 1e-6, c = big_sum > kPi - 1e-6, d = eq_err < 1e-12;
  Outcome o;
  o.pass = a && b && c && d;
  o.detail = std::string(a ? "" : "[x] ") + "T(1e-8) " + fmt("%.3e", small) + "; " +
             (b ? "" : "[x] ") + "pi-T(1e8) " + fmt("%.3e", kPi - large) + "; " + (c ? "" : "[x] ") +
             "pi-sum(1e8^3) " + fmt("%.3e", kPi - big_sum) + "; " + (d ? "" : "[x] ") + "(1,1,1) " +
             fmt("%.1e", eq_err);
  return o;
}

// 9. Disk layouts reproduce the closed forms.
Outcome layout_cross_validation() {
  std::mt19937_64 rng(909);
  double arc = 0.0, area = 0.0, resid = 0.0;
  int failed = 0;
  for (int i = 0; i < 1000; ++i) {
    const double k1 = oracle::log_uniform(rng, 1e-3, 1e3);
    const double k2 = oracle::log_uniform(rng, 1e-3, 1e3);
    const double k3 = oracle::log_uniform(rng, 1e-3, 1e3);
    try {
      auto lay = layout_face(k1, k2, k3);
      auto g = face_geometry(k1, k2, k3);
      for (int a = 0; a < 3; ++a) arc = std::max(arc, std::abs(measure_subarc(lay, a) - g.l[a]));
      area = std::max(area, std::abs(measure_region_area(lay) - g.area));
      auto r = layout_residuals(lay);
      resid = std::max({resid, r.tangency, r.orthogonality, r.horocycle});
    } catch (const Error&) {
      ++failed;
    }
  }
  Outcome o;
  o.pass = failed == 0 && arc < 1e-8 && area < 1e-7 && resid < 1e-9;
  o.detail = "arc " + fmt("%.2e", arc) + ", area " + fmt("%.2e", area) + ", residual " +
             fmt("%.2e", resid) + ", " + std::to_string(failed) + " layout failures";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 10. Two CLI runs on the shipped fixture give identical bytes.
Outcome cli_determinism() {
  Outcome o;
  if (cli_path.empty() || fixture_dir.empty()) {
    o.pass = false;
    o.detail = "needs --cli and --fixtures";
    return o;
  }
  const fs::path root = fs::temp_directory_path() / ("gcp_accept_" + std::to_string(::getpid()));
  const std::string problem = (fs::path(fixture_dir) / "annulus.json").string();
  const std::string star = (fs::path(fixture_dir) / "annulus_boundary_star.json").string();
  int codes = 0;
  for (int run = 0; run < 2; ++run) {
    const std::string out = (root / std::to_string(run)).string();
    codes |= std::system(("\"" + cli_path + "\" solve \"" + problem + "\" --out \"" + out + "\" > /dev/null").c_str());
    codes |= std::system(("\"" + cli_path + "\" compare \"" + problem + "\" \"" + star + "\" --out \"" + out +
                          "\" > /dev/null").c_str());
  }
  int same = 0;
  const char* files[] = {"result.json", "trace.csv", "comparison.json"};
  for (const char* f : files) {
    const auto a = slurp(root / "0" / f), b = slurp(root / "1" / f);
    if (!a.empty() && a == b) ++same;
  }
  fs::remove_all(root);
  o.pass = codes == 0 && same == 3;
  o.detail = std::to_string(same) + "/3 outputs identical, exit codes " + (codes == 0 ? "0" : "nonzero");
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;  // 0: no runtime bound
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"kernel derivatives", 5.0, kernel_derivatives},
    {"jacobian structure", 30.0, jacobian_structure},
    {"round trip", 120.0, homeomorphism},
    {"feasibility oracles", 60.0, feasibility_equivalence},
    {"flow descent", 0.0, flow_descent},
    {"maximum principle", 180.0, maximum_principle},
    {"schwarz-pick", 0.0, schwarz_pick},
    {"limit regimes", 0.0, limit_regimes},
    {"layout cross-validation", 60.0, layout_cross_validation},
    {"cli determinism", 0.0, cli_determinism},
};

bool run(int n) {
  const auto& c = kCriteria[n - 1];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool slow = c.budget_s > 0.0 && secs > c.budget_s;
  const bool pass = o.pass && !slow;
  std::printf("criterion %2d %-24s %s  %s  (%.1f s%s)\n", n, c.name, pass ? "PASS" : "FAIL",
              o.detail.c_str(), secs, slow ? " over budget" : "");
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc)
      cli_path = argv[++i];
    else if (a == "--fixtures" && i + 1 < argc)
      fixture_dir = argv[++i];
    else
      which.push_back(std::atoi(a.c_str()));
  }
  if (which.empty())
    for (int n = 1; n <= 10; ++n) which.push_back(n);
  bool ok = true;
  for (int n : which) {
    if (n < 1 || n > 10) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    ok = run(n) && ok;
  }
  return ok ? 0 : 1;
}
