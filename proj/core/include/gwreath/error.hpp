#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gwreath {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or mismatched arguments: an element that does not belong to the
// group, a vertex outside the graph, a table that is not a group, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Pushing a word forward through a quotient graph whose image vertex carries a
// loop is not a homomorphism when the vertex group is non-abelian.
class LoopObstruction : public Error {
 public:
  using Error::Error;
};

// A bounded search (separating subgroup, LEF modulus) ran out of candidates.
class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, std::int64_t bound)
      : Error(what), bound_(bound) {}
  std::int64_t bound() const noexcept { return bound_; }

 private:
  std::int64_t bound_;
};

// The identity element was handed to an operation that needs a nontrivial one.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// The hypotheses of a non-residual-finiteness witness could not be certified
// from the built-in obstruction lemmas.
class NotCertifiable : public Error {
 public:
  using Error::Error;
};

// Instance or certificate text that does not parse. Carries the 1-based line
// and the offending field name.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message)
      : Error("line " + std::to_string(line) + ", field '" + field + "': " + message),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace gwreath
