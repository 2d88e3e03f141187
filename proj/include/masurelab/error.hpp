#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace masurelab {

enum class ErrorCode {
  NotSquare,
  BadDiagonal,
  PositiveOffDiagonal,
  BrokenZeroSymmetry,
  InvalidRootDatum,
  NotInQveeSpan,
  NotInYPlusVin,
  NotDominantable,
  BoundExceeded,
  NotDecomposable,
  InvalidPath,
  CutoffTooSmall,
  DepthExceeded,
  ResourceLimit,
  NotInvertible,
  MissingMultiplicity,
  InvalidArgument,
  Unsupported,
  Parse,
};

std::string_view code_name(ErrorCode code) noexcept;

// A computational refusal: the inputs are outside what an operation accepts,
// or a bounded search could not certify its answer.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Raised when an internal invariant fails. Always a bug.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

[[noreturn]] void fail_invariant(const char* expr, const char* file, int line);

}  // namespace masurelab

#define MASURELAB_ASSERT(expr) \
  ((expr) ? static_cast<void>(0) : ::masurelab::fail_invariant(#expr, __FILE__, __LINE__))
