#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shavok {

/// Failure categories. The C API and the CLI map these onto status and exit codes.
enum class ErrorKind {
  parameter,   // caller supplied an out-of-range or inconsistent argument
  config,      // invalid configuration (unknown preset, unknown parameter name, ...)
  data,        // input data is unusable (non-finite, non-uniform, too short)
  numerical,   // an algorithm failed to converge or diverged
  degenerate,  // rank deficiency where full rank is required
  io,          // file could not be read or written
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Rank deficiency tied to a specific input position (a vector index, a
/// curvature order, a singular value index).
class DegenerateError : public Error {
 public:
  DegenerateError(std::size_t index, const std::string& what)
      : Error(ErrorKind::degenerate, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace shavok
