#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace localpr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside the documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyGraph : public Error {
 public:
  EmptyGraph() : Error("edge list contains no edges") {}
};

/// Conductance is undefined for the empty set and for the whole vertex set.
class DegenerateSet : public Error {
 public:
  using Error::Error;
};

class EmptyVector : public Error {
 public:
  using Error::Error;
};

class OutOfPathRange : public Error {
 public:
  using Error::Error;
};

}  // namespace localpr
