#pragma once

#include <stdexcept>
#include <string>

namespace hmom {

enum class ErrorKind {
  parse,
  shape,
  argument,
  range,
  precondition,
  outside,       // a supplied candidate or contraction violates its interval
  inconsistent,  // two independent computations disagree beyond tolerance
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hmom
