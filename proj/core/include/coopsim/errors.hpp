#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coopsim {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- topology --------------------------------------------------------------

struct UnknownVertexError : Error {
  using Error::Error;
};

struct SelfLoopError : Error {
  using Error::Error;
};

// Raised whenever a numeric argument leaves its documented range.
// `field()` names the offending parameter.
class ParameterOutOfRangeError : public Error {
 public:
  ParameterOutOfRangeError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// -- link model ------------------------------------------------------------

// rho_capacity = 1 while c0 is flagged as an asymptotic upper limit.
struct AsymptoticCapacityError : Error {
  using Error::Error;
};

// A link that carries zero bits per slot cannot complete any transfer.
struct UnusableLinkError : Error {
  using Error::Error;
};

// -- moments ---------------------------------------------------------------

class InsufficientSamplesError : public Error {
 public:
  InsufficientSamplesError(std::size_t required, const std::string& what)
      : Error(what), required_(required) {}
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

// Skewness is undefined when the sample variance is zero.
struct DegenerateDistributionError : Error {
  using Error::Error;
};

// -- planner ---------------------------------------------------------------

struct NonPositiveDenominatorError : Error {
  using Error::Error;
};

// -- sim engine ------------------------------------------------------------

struct InvalidScenarioError : Error {
  using Error::Error;
};

// step() called after the final round.
struct ExhaustedError : Error {
  using Error::Error;
};

// -- scenario io -----------------------------------------------------------

class ScenarioSyntaxError : public Error {
 public:
  ScenarioSyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Structurally valid document that violates a field constraint.
// `path()` points at the field, e.g. "links[2].rho_capacity".
class ScenarioValidationError : public Error {
 public:
  ScenarioValidationError(std::string path, const std::string& constraint)
      : Error(path + ": " + constraint), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace coopsim
