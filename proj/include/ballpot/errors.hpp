#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ballpot {

/// Operands live in different dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument violates an operation's precondition (outside the ball, p out of range, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation landed on the singularity of the Green kernel.
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what, std::optional<std::size_t> atom = std::nullopt)
      : std::domain_error(what), atom_(atom) {}

  /// Index of the atom whose location coincides with the evaluation point, when known.
  std::optional<std::size_t> atom() const { return atom_; }

 private:
  std::optional<std::size_t> atom_;
};

/// Rejected input to the exponent fit; `index()` names the offending grid point.
class FitError : public std::invalid_argument {
 public:
  FitError(const std::string& what, std::size_t index) : std::invalid_argument(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Malformed measure document or scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ballpot
