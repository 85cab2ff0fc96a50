#pragma once

#include <stdexcept>
#include <string>

namespace ptrie {

enum class ErrorKind {
  invalid_argument,
  depth_exceeded,
  invalid_path,
  limit_exceeded,
  unary_node,
  shape_dependence,
  empty_tree,
  pole,
  non_convergent,
  aperiodic,
  degenerate_variance,
};

const char* to_string(ErrorKind kind) noexcept;

/// Library error. `kind()` distinguishes usage errors from numeric/limit
/// failures so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace ptrie
