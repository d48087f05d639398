#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class InvalidFrame : public Error {
 public:
  using Error::Error;
};

/// An operation needs a full-rank lattice and did not get one.
class RankError : public Error {
 public:
  using Error::Error;
};

/// An elementary operation violated its constraint at application time.
class InvalidOperation : public Error {
 public:
  InvalidOperation(std::size_t index, const std::string& what)
      : Error("op #" + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration hit its node budget before it could certify.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input; `where` is "line L, column C" or a field path.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace padic
