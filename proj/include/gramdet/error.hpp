#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gramdet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ZeroDivisor : public Error {
 public:
  ZeroDivisor() : Error("division by the zero polynomial") {}
};

// Precondition on n (or k) violated.
class UnsupportedN : public Error {
 public:
  using Error::Error;
};

// Work would exceed the configured limits.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class ClassificationFailure : public Error {
 public:
  using Error::Error;
};

class InternalInexactDivision : public Error {
 public:
  using Error::Error;
};

class InvalidDiagram : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gramdet
