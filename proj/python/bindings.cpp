#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "gcp/analysis.hpp"
#include "gcp/error.hpp"
#include "gcp/feasibility.hpp"
#include "gcp/fixtures.hpp"
#include "gcp/geometry.hpp"
#include "gcp/io.hpp"
#include "gcp/layout.hpp"
#include "gcp/mesh.hpp"
#include "gcp/solver.hpp"

namespace py = pybind11;
using namespace gcp;

namespace {

std::vector<Face> to_faces(const std::vector<std::array<VertexId, 3>>& raw) {
  std::vector<Face> faces;
  faces.reserve(raw.size());
  for (const auto& f : raw) faces.push_back(Face{f});
  return faces;
}

FeasibilityMode parse_mode(const std::string& mode, const Triangulation& mesh) {
  if (mode == "enumerate") return FeasibilityMode::Enumerate;
  if (mode == "flow") return FeasibilityMode::Flow;
  if (mode != "auto") throw Error(ErrorKind::InvalidInput, "mode must be auto, enumerate or flow");
  return mesh.num_interior() <= kMaxEnumerationVertices ? FeasibilityMode::Enumerate
                                                        : FeasibilityMode::Flow;
}

SolveResult solve(const Triangulation& mesh, const Vector& k_hat, const Vector& t_hat,
                  const std::string& solver, double tol, int max_iter, double t_max,
                  const std::string& integrator) {
  BoundaryData b{k_hat};
  Target t{t_hat};
  if (solver == "newton") {
    NewtonConfig c;
    c.tol = tol;
    c.max_iter = max_iter;
    return newton_solve(mesh, b, t, c);
  }
  if (solver != "calabi") throw Error(ErrorKind::InvalidInput, "solver must be newton or calabi");
  FlowConfig c;
  c.tol = tol;
  c.t_max = t_max;
  c.integrator = integrator == "euler" ? Integrator::Euler : Integrator::Rk4;
  return calabi_flow(mesh, b, t, c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized hyperbolic circle packings";

  static py::exception<Error> error(m, "GcpError", PyExc_ValueError);
  static py::exception<NotConvergedError> not_converged(m, "NotConvergedError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotConvergedError& e) {
      py::set_error(not_converged, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Triangulation>(m, "Triangulation")
      .def(py::init([](const std::vector<std::array<VertexId, 3>>& faces,
                       std::optional<std::vector<std::int64_t>> labels,
                       std::optional<std::vector<VertexId>> boundary) {
             if (!labels) {
               VertexId n = 0;
               for (const auto& f : faces)
                 for (VertexId v : f) n = std::max(n, v + 1);
               if (boundary) {
                 std::vector<std::int64_t> ids(n);
                 for (VertexId i = 0; i < n; ++i) ids[i] = i;
                 return Triangulation::build(ids, to_faces(faces), boundary);
               }
               return Triangulation::build(static_cast<std::size_t>(n), to_faces(faces));
             }
             return Triangulation::build(*labels, to_faces(faces), boundary);
           }),
           py::arg("faces"), py::arg("labels") = py::none(), py::arg("boundary") = py::none())
      .def_property_readonly("num_vertices", &Triangulation::num_vertices)
      .def_property_readonly("num_faces", &Triangulation::num_faces)
      .def_property_readonly("num_interior", &Triangulation::num_interior)
      .def_property_readonly("num_boundary", &Triangulation::num_boundary)
      .def_property_readonly("faces",
                             [](const Triangulation& t) {
                               std::vector<std::array<VertexId, 3>> out;
                               for (const auto& f : t.faces()) out.push_back(f.v);
                               return out;
                             })
      .def_property_readonly("labels", &Triangulation::labels)
      .def_property_readonly("interior_vertices", &Triangulation::interior_vertices)
      .def_property_readonly("boundary_vertices", &Triangulation::boundary_vertices)
      .def("is_boundary", &Triangulation::is_boundary)
      .def("star", [](const Triangulation& t, VertexId v) {
        auto s = t.star(v);
        return std::vector<FaceId>(s.begin(), s.end());
      })
      .def("neighbors", [](const Triangulation& t, VertexId v) {
        auto s = t.neighbors(v);
        return std::vector<VertexId>(s.begin(), s.end());
      });

  m.def("radius", &radius, py::arg("k"));
  m.def("edge_length", &edge_length, py::arg("k_i"), py::arg("k_j"));
  m.def("dual_curvature", &dual_curvature, py::arg("k1"), py::arg("k2"), py::arg("k3"));
  m.def("arc_length", &arc_length, py::arg("k_v"), py::arg("k_f"));
  m.def("arc_length_partials", [](double kv, double kf) {
    auto a = arc_length_with_partials(kv, kf);
    return py::make_tuple(a.value, a.d_kv, a.d_kf);
  }, py::arg("k_v"), py::arg("k_f"));
  m.def("total_curvature", &total_curvature, py::arg("k_v"), py::arg("k_f"));
  m.def("face_geometry", [](double k1, double k2, double k3) {
    auto g = face_geometry(k1, k2, k3);
    py::dict d;
    d["k"] = g.k;
    d["k_f"] = g.k_f;
    d["l"] = g.l;
    d["T"] = g.T;
    d["area"] = g.area;
    return d;
  }, py::arg("k1"), py::arg("k2"), py::arg("k3"));

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("step", &TraceRow::step)
      .def_readonly("time", &TraceRow::time)
      .def_readonly("residual_inf", &TraceRow::residual_inf)
      .def_readonly("energy_monitor", &TraceRow::energy_monitor)
      .def_readonly("dt", &TraceRow::dt);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("s", &SolveResult::s)
      .def_readonly("k", &SolveResult::k)
      .def_readonly("T", &SolveResult::T)
      .def_readonly("residual_inf", &SolveResult::residual_inf)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("time", &SolveResult::time)
      .def_readonly("converged", &SolveResult::converged)
      .def_readonly("trace", &SolveResult::trace);

  m.def("solve", &solve, py::arg("mesh"), py::arg("boundary_k"), py::arg("target_T"),
        py::arg("solver") = "newton", py::arg("tol") = 1e-10, py::arg("max_iter") = 100,
        py::arg("t_max") = 1e5, py::arg("integrator") = "rk4",
        "Boundary and target vectors are indexed by boundary/interior order.");
  m.def("interior_totals", [](const Triangulation& mesh, const Vector& k_hat, const Vector& s) {
    return interior_totals(mesh, BoundaryData{k_hat}, s);
  }, py::arg("mesh"), py::arg("boundary_k"), py::arg("s"));

  m.def("check_feasibility", [](const Triangulation& mesh, const std::vector<double>& target,
                                const std::string& mode) {
    auto v = check_feasibility(mesh, target, parse_mode(mode, mesh));
    py::dict d;
    d["feasible"] = v.feasible;
    d["witness"] = v.witness;
    d["witness_total"] = v.witness_total;
    d["witness_coverage"] = v.witness_coverage;
    return d;
  }, py::arg("mesh"), py::arg("target_T"), py::arg("mode") = "auto");

  m.def("compare", [](const Triangulation& mesh, const Vector& k_hat, const Vector& k_hat_star,
                      const Vector& t_hat, std::uint64_t seed) {
    Target t{t_hat};
    auto base = newton_solve(mesh, BoundaryData{k_hat}, t);
    auto star = newton_solve(mesh, BoundaryData{k_hat_star}, t);
    auto pair = make_packing_pair(mesh, Packing{BoundaryData{k_hat}, t, std::move(base)},
                                  Packing{BoundaryData{k_hat_star}, t, std::move(star)});
    auto mp = max_principle_check(pair);
    std::optional<ComparisonReport> sp;
    std::optional<bool> dual_ok;
    if (mp.boundary_ordered) {
      std::mt19937_64 rng(seed);
      std::vector<ArcChain> chains;
      for (int i = 0; i < 10; ++i) chains.push_back(random_chain(mesh, 2 + i % 5, rng));
      sp = schwarz_pick_report(pair, chains);
      if (mp.ordered.value_or(false)) dual_ok = dual_monotonicity_check(pair);
    }
    return py::module_::import("json").attr("loads")(io::comparison_to_json(pair, mp, sp, dual_ok).dump());
  }, py::arg("mesh"), py::arg("boundary_k"), py::arg("boundary_k_star"), py::arg("target_T"),
     py::arg("seed") = 0, "Solves both packings with Newton and returns the comparison report.");

  py::class_<FaceLayout>(m, "FaceLayout")
      .def_readonly("k", &FaceLayout::k)
      .def_readonly("k_f", &FaceLayout::k_f)
      .def_readonly("tangent_angles", &FaceLayout::tangent_angles)
      .def_readonly("residual", &FaceLayout::residual)
      .def_property_readonly("centers", [](const FaceLayout& l) {
        std::vector<Point> c;
        for (const auto& circle : l.circles) c.push_back(circle.center);
        return c;
      })
      .def_property_readonly("radii", [](const FaceLayout& l) {
        std::array<double, 3> r{};
        for (int a = 0; a < 3; ++a) r[a] = l.circles[a].radius;
        return r;
      })
      .def_property_readonly("tangent_points", [](const FaceLayout& l) {
        return std::vector<Point>(l.tangent_points.begin(), l.tangent_points.end());
      })
      .def("measure_subarc", &measure_subarc, py::arg("slot"))
      .def("measure_dual_circumference", &measure_dual_circumference)
      .def("measure_region_area", &measure_region_area)
      .def("residuals", [](const FaceLayout& l) {
        auto r = layout_residuals(l);
        py::dict d;
        d["curvature"] = r.curvature;
        d["tangency"] = r.tangency;
        d["orthogonality"] = r.orthogonality;
        d["horocycle"] = r.horocycle;
        return d;
      })
      .def("svg", [](const FaceLayout& l, const std::string& title) {
        SvgOptions o;
        o.title = title;
        std::vector<FaceLayout> one{l};
        return render_svg(one, o);
      }, py::arg("title") = "");

  m.def("layout_face", &layout_face, py::arg("k1"), py::arg("k2"), py::arg("k3"));

  m.def("annulus", [](const std::vector<int>& rings) { return annulus(rings); }, py::arg("ring_sizes"));
  m.def("wheel", &wheel, py::arg("n"));
  m.def("random_problem", [](int rings, int min_size, int max_size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto mesh = random_annulus(rings, min_size, max_size, rng);
    auto b = random_boundary(mesh, 0.1, 10.0, rng);
    auto s = random_log_curvatures(mesh, -1.0, 1.0, rng);
    auto t = forward_target(mesh, b, s);
    return py::make_tuple(mesh, b.k_hat, t.T_hat, s);
  }, py::arg("interior_rings") = 2, py::arg("min_size") = 5, py::arg("max_size") = 8,
     py::arg("seed") = 0, "Returns (mesh, boundary_k, target_T, s) with target_T = T(s).");

  m.def("load_problem", [](const std::string& path) {
    auto p = io::parse_problem(io::read_json(path));
    return py::make_tuple(p.mesh, p.boundary.k_hat, p.target.T_hat);
  }, py::arg("path"));
}
