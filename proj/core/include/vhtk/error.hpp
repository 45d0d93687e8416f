// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vh {

/// Broad failure categories. The command line tool maps them onto exit codes.
enum class ErrorKind {
  Usage,         // malformed request
  InvalidInput,  // parse failures, violated data invariants
  Negative,      // a well-posed question answered "no" (infeasible, not special, ...)
  Bound,         // a configured resource bound would be exceeded
  Internal,      // a checked invariant failed: implementation bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& what) : Error(ErrorKind::Negative, what) {}
};

class BoundExceeded : public Error {
 public:
  explicit BoundExceeded(const std::string& what) : Error(ErrorKind::Bound, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::Internal, what) {}
};

#define VHTK_CHECK(cond, msg)                                                      \
  do {                                                                             \
    if (!(cond)) throw ::vh::InternalError(std::string("check failed: ") + (msg)); \
  } while (0)

}  // namespace vh
