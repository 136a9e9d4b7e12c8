#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qg {

/// Machine-readable error categories. The CLI prints the category name and
/// maps each one to a distinct nonzero exit code.
enum class ErrorKind {
  Parse,
  Validation,
  PoleAtK,
  NonzeroPotential,
  NotARoot,
  NotSpectrallyEquilateral,
  InconsistentCounterpart,
  InternalConsistency,
  Argument,
  Io,
  Assertion,
};

std::string_view to_string(ErrorKind kind);
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qg
