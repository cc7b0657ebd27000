#pragma once

#include <stdexcept>
#include <string>

namespace plg {

enum class ErrorKind {
  InvalidInput,        // malformed data or violated precondition
  DivisionByZero,
  IncompatibleRadicand,
  NotMember,           // discrete log / membership failure
  Unsupported,         // outside the decidable fragment
  BudgetExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::InvalidInput, what);
}

}  // namespace plg
