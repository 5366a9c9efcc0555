// gcpack: validate, solve, compare and render generalized circle packings.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gcp/analysis.hpp"
#include "gcp/error.hpp"
#include "gcp/feasibility.hpp"
#include "gcp/fixtures.hpp"
#include "gcp/geometry.hpp"
#include "gcp/io.hpp"
#include "gcp/layout.hpp"
#include "gcp/solver.hpp"

namespace fs = std::filesystem;
using gcp::io::json;

namespace {

enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kInfeasible = 2,
  kNotConverged = 3,
  kHypothesis = 4,
  kViolation = 5,
};

constexpr double kCrossCheckTol = 1e-8;

struct RunConfig {
  std::string solver = "newton";
  double tol = 1e-10;
  int max_iter = 100;
  double t_max = 1e5;
  std::string integrator = "rk4";
  std::string feasibility = "auto";
  bool cross_check = false;
  std::string out = ".";
  std::uint64_t seed = 0;
  std::string faces;
};

void add_solver_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--solver", cfg.solver, "newton or calabi")
      ->check(CLI::IsMember({"newton", "calabi"}));
  cmd->add_option("--tol", cfg.tol, "residual tolerance (sup norm)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", cfg.max_iter, "Newton iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--t-max", cfg.t_max, "flow time horizon")->check(CLI::PositiveNumber);
  cmd->add_option("--integrator", cfg.integrator, "euler or rk4")
      ->check(CLI::IsMember({"euler", "rk4"}));
  cmd->add_option("--feasibility", cfg.feasibility, "enumerate, flow, skip or auto")
      ->check(CLI::IsMember({"auto", "enumerate", "flow", "skip"}));
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw gcp::Error(gcp::ErrorKind::InvalidInput, "cannot create directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::optional<gcp::FeasibilityMode> feasibility_mode(const RunConfig& cfg,
                                                     const gcp::Triangulation& mesh) {
  if (cfg.feasibility == "skip") return std::nullopt;
  if (cfg.feasibility == "flow") return gcp::FeasibilityMode::Flow;
  if (cfg.feasibility == "enumerate") {
    if (mesh.num_interior() > gcp::kMaxEnumerationVertices)
      throw gcp::Error(gcp::ErrorKind::TooLargeForEnumeration,
                       "enumerate mode needs at most " +
                           std::to_string(gcp::kMaxEnumerationVertices) + " interior vertices, got " +
                           std::to_string(mesh.num_interior()));
    return gcp::FeasibilityMode::Enumerate;
  }
  return mesh.num_interior() <= gcp::kMaxEnumerationVertices ? gcp::FeasibilityMode::Enumerate
                                                            : gcp::FeasibilityMode::Flow;
}

/// Prints the witness and returns false when the target is infeasible.
bool report_feasibility(const RunConfig& cfg, const gcp::io::Problem& p) {
  auto mode = feasibility_mode(cfg, p.mesh);
  if (!mode) return true;
  const auto& t = p.target.T_hat;
  auto verdict = gcp::check_feasibility(p.mesh, std::span<const double>(t.data(), t.size()), *mode);
  if (!verdict.feasible) {
    std::cerr << "infeasible target: " << gcp::io::verdict_to_json(p.mesh, verdict).dump() << "\n";
    return false;
  }
  return true;
}

gcp::SolveResult run_solver(const std::string& solver, const RunConfig& cfg,
                            const gcp::io::Problem& p) {
  if (solver == "newton") {
    gcp::NewtonConfig nc;
    nc.tol = cfg.tol;
    nc.max_iter = cfg.max_iter;
    return gcp::newton_solve(p.mesh, p.boundary, p.target, nc);
  }
  gcp::FlowConfig fc;
  fc.tol = cfg.tol;
  fc.t_max = cfg.t_max;
  fc.integrator = cfg.integrator == "euler" ? gcp::Integrator::Euler : gcp::Integrator::Rk4;
  return gcp::calabi_flow(p.mesh, p.boundary, p.target, fc);
}

gcp::io::Problem load_problem(const std::string& path) {
  return gcp::io::parse_problem(gcp::io::read_json(path));
}

int cmd_validate(const RunConfig& cfg, const std::string& path) {
  auto p = load_problem(path);
  json report;
  report["vertices"] = p.mesh.num_vertices();
  report["faces"] = p.mesh.num_faces();
  report["interior"] = p.mesh.num_interior();
  report["boundary"] = p.mesh.num_boundary();

  auto mode = feasibility_mode(cfg, p.mesh);
  int code = kOk;
  if (mode) {
    const auto& t = p.target.T_hat;
    auto verdict =
        gcp::check_feasibility(p.mesh, std::span<const double>(t.data(), t.size()), *mode);
    report["feasibility"] = gcp::io::verdict_to_json(p.mesh, verdict);
    report["feasibility"]["mode"] = *mode == gcp::FeasibilityMode::Flow ? "flow" : "enumerate";
    if (!verdict.feasible) code = kInfeasible;
  }
  std::cout << (code == kOk ? "feasible" : "infeasible") << "\n" << dump(report);
  return code;
}

int cmd_solve(const RunConfig& cfg, const std::string& path) {
  auto p = load_problem(path);
  if (!report_feasibility(cfg, p)) return kInfeasible;
  ensure_dir(cfg.out);

  gcp::SolveResult result;
  try {
    result = run_solver(cfg.solver, cfg, p);
  } catch (const gcp::NotConvergedError& e) {
    gcp::io::write_text(join(cfg.out, "trace.csv"), gcp::io::trace_to_csv(e.partial().trace));
    std::cerr << "not converged: " << e.what() << "\n";
    return kNotConverged;
  }
  gcp::io::write_text(join(cfg.out, "result.json"),
                      dump(gcp::io::result_to_json(p.mesh, p.target, result, cfg.solver)));
  gcp::io::write_text(join(cfg.out, "trace.csv"), gcp::io::trace_to_csv(result.trace));
  std::printf("converged in %d steps, residual %.3e\n", result.iterations, result.residual_inf);

  if (cfg.cross_check) {
    const std::string other = cfg.solver == "newton" ? "calabi" : "newton";
    gcp::SolveResult second;
    try {
      second = run_solver(other, cfg, p);
    } catch (const gcp::NotConvergedError& e) {
      std::cerr << "cross-check: " << other << " did not converge: " << e.what() << "\n";
      return kNotConverged;
    }
    double gap = 0.0;
    for (std::size_t v = 0; v < result.k.size(); ++v)
      gap = std::max(gap, std::abs(result.k[v] - second.k[v]) / std::max(1.0, std::abs(result.k[v])));
    std::printf("cross-check against %s: max curvature gap %.3e\n", other.c_str(), gap);
    if (!(gap <= kCrossCheckTol)) return kViolation;
  }
  return kOk;
}

gcp::BoundaryData load_star_boundary(const std::string& path, const gcp::Triangulation& mesh) {
  json j = gcp::io::read_json(path);
  if (j.is_object() && j.contains("boundary_k")) return gcp::io::parse_boundary(j["boundary_k"], mesh);
  return gcp::io::parse_boundary(j, mesh);
}

int cmd_compare(const RunConfig& cfg, const std::string& path, const std::string& star_path) {
  auto p = load_problem(path);
  auto star_boundary = load_star_boundary(star_path, p.mesh);
  if (!report_feasibility(cfg, p)) return kInfeasible;
  ensure_dir(cfg.out);

  gcp::SolveResult base, star;
  try {
    base = run_solver(cfg.solver, cfg, p);
    gcp::io::Problem ps{p.mesh, star_boundary, p.target};
    star = run_solver(cfg.solver, cfg, ps);
  } catch (const gcp::NotConvergedError& e) {
    std::cerr << "not converged: " << e.what() << "\n";
    return kNotConverged;
  }
  auto pair = gcp::make_packing_pair(p.mesh, gcp::Packing{p.boundary, p.target, std::move(base)},
                                     gcp::Packing{star_boundary, p.target, std::move(star)});
  auto mp = gcp::max_principle_check(pair);

  std::optional<gcp::ComparisonReport> sp;
  std::optional<bool> dual_ok;
  int code = kOk;
  if (mp.boundary_ordered) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<gcp::ArcChain> chains;
    for (int i = 0; i < 10; ++i) chains.push_back(gcp::random_chain(p.mesh, 2 + i % 5, rng));
    sp = gcp::schwarz_pick_report(pair, chains);
    if (mp.ordered.value_or(false)) dual_ok = gcp::dual_monotonicity_check(pair);
    const bool ok = mp.max_on_boundary && mp.ordered.value_or(false) && dual_ok.value_or(false) &&
                    sp->area_violations + sp->arc_violations + sp->chain_violations == 0;
    if (!ok) code = kViolation;
  } else {
    code = mp.max_on_boundary ? kHypothesis : kViolation;
    std::cerr << "boundary data not ordered (k* <= k fails on the boundary): "
                 "only the boundary maximum check applies\n";
  }
  auto report = gcp::io::comparison_to_json(pair, mp, sp, dual_ok);
  gcp::io::write_text(join(cfg.out, "comparison.json"), dump(report));
  std::printf("violations: %s\n", report["summary"]["total_violations"].dump().c_str());
  return code;
}

std::vector<gcp::FaceId> parse_faces(const std::string& list, std::size_t num_faces) {
  std::vector<gcp::FaceId> out;
  if (list.empty()) {
    for (std::size_t f = 0; f < num_faces; ++f) out.push_back(static_cast<gcp::FaceId>(f));
    return out;
  }
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long f = -1;
    try {
      f = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || f < 0 || static_cast<std::size_t>(f) >= num_faces)
      throw gcp::Error(gcp::ErrorKind::InvalidInput, "--faces: bad face id '" + item + "'");
    out.push_back(static_cast<gcp::FaceId>(f));
  }
  return out;
}

int cmd_layout(const RunConfig& cfg, const std::string& path) {
  auto stored = gcp::io::parse_result(gcp::io::read_json(path));
  if (!stored.converged) {
    std::cerr << "refusing to lay out " << path << ": the stored solve did not converge\n";
    return kInputError;
  }
  const auto& mesh = stored.mesh;
  auto faces = parse_faces(cfg.faces, mesh.num_faces());
  ensure_dir(cfg.out);

  json summary;
  summary["faces"] = json::array();
  json failed = json::array();
  double max_err = 0.0;
  for (gcp::FaceId f : faces) {
    const auto& face = mesh.faces()[f];
    const double k1 = stored.k[face.v[0]], k2 = stored.k[face.v[1]], k3 = stored.k[face.v[2]];
    gcp::FaceLayout lay;
    try {
      lay = gcp::layout_face(k1, k2, k3);
    } catch (const gcp::Error& e) {
      failed.push_back({{"face", f}, {"error", e.what()}});
      continue;
    }
    const auto geo = gcp::face_geometry(k1, k2, k3);
    double err = 0.0;
    for (int a = 0; a < 3; ++a) err = std::max(err, std::abs(gcp::measure_subarc(lay, a) - geo.l[a]));
    const double area_err = std::abs(gcp::measure_region_area(lay) - geo.area);
    max_err = std::max(max_err, err);

    gcp::SvgOptions opt;
    opt.title = "face " + std::to_string(f);
    std::vector<gcp::FaceLayout> one{lay};
    gcp::io::write_text(join(cfg.out, "face-" + std::to_string(f) + ".svg"), gcp::render_svg(one, opt));
    summary["faces"].push_back({{"face", f}, {"arc_error", err}, {"area_error", area_err}});
  }
  summary["max_arc_error"] = max_err;
  summary["failed"] = failed;
  gcp::io::write_text(join(cfg.out, "layout_summary.json"), dump(summary));
  std::printf("rendered %zu faces, max arc error %.3e\n", faces.size() - failed.size(), max_err);
  for (const auto& item : failed)
    std::cerr << "face " << item["face"].get<int>() << ": " << item["error"].get<std::string>() << "\n";
  return failed.empty() ? kOk : kNotConverged;
}

struct FixtureConfig {
  int rings = 3;
  int min_size = 5;
  int max_size = 9;
  double k_lo = 0.1, k_hi = 10.0;
  double s_lo = -1.0, s_hi = 1.0;
  double star_scale = 0.7;
  std::string name = "annulus";
};

int cmd_fixture(const RunConfig& cfg, const FixtureConfig& fx) {
  std::mt19937_64 rng(cfg.seed);
  auto mesh = gcp::random_annulus(fx.rings, fx.min_size, fx.max_size, rng);
  auto boundary = gcp::random_boundary(mesh, fx.k_lo, fx.k_hi, rng);
  auto s = gcp::random_log_curvatures(mesh, fx.s_lo, fx.s_hi, rng);
  auto target = gcp::forward_target(mesh, boundary, s);
  ensure_dir(cfg.out);

  gcp::io::Problem p{mesh, boundary, target};
  gcp::io::write_text(join(cfg.out, fx.name + ".json"), dump(gcp::io::problem_to_json(p)));
  json star = json::object();
  for (gcp::VertexId v : mesh.boundary_vertices())
    star[std::to_string(mesh.label(v))] = fx.star_scale * boundary.k_hat[mesh.boundary_index(v)];
  gcp::io::write_text(join(cfg.out, fx.name + "_boundary_star.json"), dump(star));
  std::printf("wrote %s (%zu vertices, %zu interior, %zu faces)\n", fx.name.c_str(),
              mesh.num_vertices(), mesh.num_interior(), mesh.num_faces());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized hyperbolic circle packings with prescribed total curvature"};
  app.require_subcommand(1);
  RunConfig cfg;
  FixtureConfig fx;
  std::string input, star_input;

  auto* validate = app.add_subcommand("validate", "check a problem and the feasibility of its target");
  validate->add_option("problem", input, "problem JSON")->required()->check(CLI::ExistingFile);
  validate->add_option("--feasibility", cfg.feasibility, "enumerate, flow, skip or auto")
      ->check(CLI::IsMember({"auto", "enumerate", "flow", "skip"}));

  auto* solve = app.add_subcommand("solve", "solve for interior curvatures");
  solve->add_option("problem", input, "problem JSON")->required()->check(CLI::ExistingFile);
  add_solver_flags(solve, cfg);
  solve->add_flag("--cross-check", cfg.cross_check, "also run the other solver and compare");
  solve->add_option("--out", cfg.out, "output directory");

  auto* compare = app.add_subcommand("compare", "compare packings for two boundary data sets");
  compare->add_option("problem", input, "problem JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("boundary_star", star_input, "second boundary curvatures")
      ->required()
      ->check(CLI::ExistingFile);
  add_solver_flags(compare, cfg);
  compare->add_option("--out", cfg.out, "output directory");
  compare->add_option("--seed", cfg.seed, "seed for the random arc chains");

  auto* layout = app.add_subcommand("layout", "draw faces of a solved packing in the disk");
  layout->add_option("result", input, "result JSON")->required()->check(CLI::ExistingFile);
  layout->add_option("--faces", cfg.faces, "comma separated face ids");
  layout->add_option("--out", cfg.out, "output directory");

  auto* fixture = app.add_subcommand("fixture", "generate a random annulus problem");
  fixture->add_option("--rings", fx.rings, "interior rings")->check(CLI::PositiveNumber);
  fixture->add_option("--min-size", fx.min_size, "smallest ring")->check(CLI::Range(3, 1000));
  fixture->add_option("--max-size", fx.max_size, "largest ring")->check(CLI::Range(3, 1000));
  fixture->add_option("--star-scale", fx.star_scale, "factor for the second boundary file")
      ->check(CLI::PositiveNumber);
  fixture->add_option("--name", fx.name, "file name stem");
  fixture->add_option("--seed", cfg.seed, "random seed");
  fixture->add_option("--out", cfg.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(cfg, input);
    if (*solve) return cmd_solve(cfg, input);
    if (*compare) return cmd_compare(cfg, input, star_input);
    if (*layout) return cmd_layout(cfg, input);
    if (*fixture) {
      if (fx.max_size < fx.min_size) throw gcp::Error(gcp::ErrorKind::InvalidInput, "--max-size < --min-size");
      return cmd_fixture(cfg, fx);
    }
  } catch (const gcp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
