#pragma once

#include <stdexcept>
#include <string>

namespace schrospec {

/// Invalid shapes, parameters, or configuration values.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computation produced a non-finite value. `term()` names the quantity
/// that went bad (a loss term, a network head, ...).
class NumericError : public std::runtime_error {
public:
  NumericError(std::string term, const std::string& what)
      : std::runtime_error(what), term_(std::move(term)) {}

  const std::string& term() const noexcept { return term_; }

private:
  std::string term_;
};

class CheckpointError : public std::runtime_error {
public:
  enum class Kind { Io, Format, Version, Truncated, Shape };

  CheckpointError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

class OracleError : public std::runtime_error {
public:
  enum class Kind { InvalidArgument, DomainTooSmall, NoConvergence };

  OracleError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Zero-norm or otherwise unusable input to a metric.
class DegenerateInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace schrospec
