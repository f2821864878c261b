#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cmv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate an operation's contract.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotAtomic : public Error {
 public:
  using Error::Error;
};

class NotAdjacent : public Error {
 public:
  using Error::Error;
};

// An internally constructed object failed its own validation.
class ValidationFailure : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

// Result of a diagnostic check: ok, or a list of named problems.
struct Report {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
  explicit operator bool() const { return ok(); }
  void fail(std::string message) { problems.push_back(std::move(message)); }
  std::string summary() const;
};

}  // namespace cmv
