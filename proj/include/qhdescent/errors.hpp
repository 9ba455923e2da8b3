#pragma once

#include <stdexcept>
#include <string>

namespace qhd {

enum class ErrorKind {
  parse,         // malformed text or JSON
  schema,        // well-formed input that breaks a data invariant
  precondition,  // operation called outside its domain
  not_invertible,
  unsupported,   // regime the engine deliberately does not model
  internal
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qhd
