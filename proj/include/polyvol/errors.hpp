#pragma once

#include <stdexcept>
#include <string>

namespace polyvol {

// Thrown by the checked 64-bit integer layer when a result would wrap.
// Deliberately not derived from std::exception: it is a control signal that
// makes the driver restart the whole run with arbitrary-precision integers,
// never an error shown to the user.
struct Overflow {};

enum class ErrorKind {
  SingularMatrix,
  ZeroVector,
  NotPointed,
  ZeroCone,
  NotFullDim,
  ZeroGrading,
  DegenerateSpan,
  DegenerateSimplex,
  NonPositiveDegree,
  EmptyFace,
  SharedFacetDegenerate,
  GenericityViolated,
  DegenerateGrading,
  ExhaustedCandidates,
  ParseError,
  InconsistentDimensions,
  UnboundedPolytope,
  VerificationFailed,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  // Process exit code contract: 2 = malformed input, 3 = geometric
  // precondition violated, 4 = verification failure, 5 = generic-element
  // search exhausted.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::ParseError:
      case ErrorKind::InconsistentDimensions:
        return 2;
      case ErrorKind::VerificationFailed:
        return 4;
      case ErrorKind::ExhaustedCandidates:
        return 5;
      default:
        return 3;
    }
  }

private:
  ErrorKind kind_;
};

const char* error_kind_name(ErrorKind k);

}  // namespace polyvol
