#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsketch {

enum class ErrorKind {
  InvalidGraph,
  InvalidMorphism,
  DomainMismatch,
  NotInvertible,
  NotASketchMorphism,
  IllFormedCondition,
  NotCertified,
  Precondition,
  FuelExhausted,
  Syntax,
  Resolution,
  Validation,
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 protected:
  struct Verbatim {};
  /// `what` is used as the full message, without the kind prefix.
  Error(ErrorKind kind, const std::string& what, Verbatim) : std::runtime_error(what), kind_(kind) {}

 private:
  ErrorKind kind_;
};

}  // namespace gsketch
