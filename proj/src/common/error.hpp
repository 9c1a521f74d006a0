#pragma once

#include <stdexcept>
#include <string>

namespace gformal {

// Error categories surfaced through the C API as status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  DimensionMismatch,
  DegreeOutOfRange,
  NotHomogeneous,
  UnknownTarget,
  MalformedConfig,
  PatternInapplicable,
  InconsistentInput,
  Unsupported,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}
inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace gformal
