#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adi {

enum class ErrorKind {
  InvalidArgument,
  TriangleDegenerate,
  AngleDomain,
  NoBracket,
  StepFailure,
  OutOfRange,
  NoCrossing,
  QuadratureNoConverge,
  MaxIterations,
  NotUnimodal,
  WindowViolated,
};

std::string_view to_string(ErrorKind kind);

// Structured failure. `index` carries a step or grid index when one is
// meaningful (e.g. the recursion step that violated its domain), else -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, long index = -1);

  ErrorKind kind() const noexcept { return kind_; }
  long index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  long index_;
};

}  // namespace adi
