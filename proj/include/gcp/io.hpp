#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gcp/analysis.hpp"
#include "gcp/feasibility.hpp"
#include "gcp/mesh.hpp"
#include "gcp/solver.hpp"

namespace gcp::io {

using json = nlohmann::json;

struct Problem {
  Triangulation mesh;
  BoundaryData boundary;
  Target target;
};

/// Reads a file and parses JSON; parse failures become ParseError with line/column.
json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// `{"vertices": [{"id": int}], "faces": [[int,int,int]], "boundary": [int]?}`
Triangulation parse_mesh(const json& j);
json mesh_to_json(const Triangulation& mesh);

/// `{"<vid>": k}` for every boundary vertex.
BoundaryData parse_boundary(const json& j, const Triangulation& mesh);
/// `{"<vid>": T}` for every interior vertex.
Target parse_target(const json& j, const Triangulation& mesh);

Problem parse_problem(const json& j);
json problem_to_json(const Problem& p);

json verdict_to_json(const Triangulation& mesh, const FeasibilityVerdict& v);

json result_to_json(const Triangulation& mesh, const Target& target, const SolveResult& r,
                    const std::string& solver);

/// What cmd_layout needs back out of a result file.
struct StoredResult {
  Triangulation mesh;
  std::vector<double> k;  // by dense vertex id
  bool converged = false;
};

StoredResult parse_result(const json& j);

json comparison_to_json(const PackingPair& pair, const MaxPrincipleReport& mp,
                        const std::optional<ComparisonReport>& sp, std::optional<bool> dual_ok);

/// Columns: step,time,residual_inf,energy_monitor,dt. Numbers use 17 significant digits.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace gcp::io
