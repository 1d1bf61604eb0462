#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pslet {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed potential text. `offset` is the 0-based byte offset of the
/// offending token.
class ParseError : public Error
{
public:
  ParseError(const std::string& what, std::size_t offset)
    : Error(what + " at offset " + std::to_string(offset)), offset_(offset)
  {
  }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class BindError : public Error
{
public:
  using Error::Error;
};

/// Pole, non-finite value, or evaluation outside the domain.
class EvalError : public Error
{
public:
  using Error::Error;
};

class SolverError : public Error
{
public:
  enum class Kind
  {
    NoStableFrame,
    FrequencyUndefined,
    NotAMinimum,
    HierarchyInconsistency,
    GridError,
    NonConvergence,
  };

  SolverError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Bad command-line usage (unknown preset, malformed flag value, ...).
class UsageError : public Error
{
public:
  using Error::Error;
};

} // namespace pslet
