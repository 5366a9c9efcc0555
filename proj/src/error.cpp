#include "gcp/error.hpp"

namespace gcp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorKind::NoBoundary: return "NoBoundary";
    case ErrorKind::FaceAllBoundary: return "FaceAllBoundary";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::IsolatedInteriorVertex: return "IsolatedInteriorVertex";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::NotInteriorVertex: return "NotInteriorVertex";
    case ErrorKind::BoundaryFlagMismatch: return "BoundaryFlagMismatch";
    case ErrorKind::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorKind::DualCurvatureOutOfRange: return "DualCurvatureOutOfRange";
    case ErrorKind::TooLargeForEnumeration: return "TooLargeForEnumeration";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::MeshMismatch: return "MeshMismatch";
    case ErrorKind::TargetMismatch: return "TargetMismatch";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::OrderingNotEstablished: return "OrderingNotEstablished";
    case ErrorKind::LayoutNotConverged: return "LayoutNotConverged";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace gcp
