#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcp {

enum class ErrorKind {
  // mesh
  NonManifoldEdge,
  NoBoundary,
  FaceAllBoundary,
  DegenerateFace,
  IsolatedInteriorVertex,
  UnknownVertex,
  NotInteriorVertex,
  BoundaryFlagMismatch,
  // geometry
  NonPositiveCurvature,
  DualCurvatureOutOfRange,
  // solver
  TooLargeForEnumeration,
  NotConverged,
  SingularSystem,
  InfeasibleTarget,
  InvalidInput,
  // analysis
  MeshMismatch,
  TargetMismatch,
  HypothesisViolated,
  OrderingNotEstablished,
  // layout
  LayoutNotConverged,
  // io
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gcp
