#pragma once

#include <stdexcept>
#include <string>

namespace hda {

enum class ErrorKind {
  Arity,
  Composition,
  UnknownColor,
  Owner,
  Parse,
  Schema,
  Validation,
  Undefined,  // operation outside a truncated PROP's declared range
  Unsupported,
  Cap,
  NotWeak,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hda
