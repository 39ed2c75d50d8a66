#include "polyvol/errors.hpp"

namespace polyvol {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::ZeroCone: return "ZeroCone";
    case ErrorKind::NotFullDim: return "NotFullDim";
    case ErrorKind::ZeroGrading: return "ZeroGrading";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::NonPositiveDegree: return "NonPositiveDegree";
    case ErrorKind::EmptyFace: return "EmptyFace";
    case ErrorKind::SharedFacetDegenerate: return "SharedFacetDegenerate";
    case ErrorKind::GenericityViolated: return "GenericityViolated";
    case ErrorKind::DegenerateGrading: return "DegenerateGrading";
    case ErrorKind::ExhaustedCandidates: return "ExhaustedCandidates";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InconsistentDimensions: return "InconsistentDimensions";
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace polyvol
