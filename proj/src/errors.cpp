#include "qgraph/errors.hpp"

namespace qg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::PoleAtK: return "PoleAtK";
    case ErrorKind::NonzeroPotential: return "NonzeroPotential";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::NotSpectrallyEquilateral: return "NotSpectrallyEquilateral";
    case ErrorKind::InconsistentCounterpart: return "InconsistentCounterpart";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::Argument: return "ArgumentError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Assertion: return "AssertionFailed";
  }
  return "UnknownError";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument: return 2;
    case ErrorKind::Parse: return 3;
    case ErrorKind::Validation: return 4;
    case ErrorKind::Io: return 5;
    case ErrorKind::Assertion: return 6;
    case ErrorKind::InternalConsistency: return 7;
    default: return 8;
  }
}

}  // namespace qg
