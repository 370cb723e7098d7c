#pragma once

#include <stdexcept>
#include <string>

namespace sscov {

// Error categories map one-to-one onto CLI exit codes (see tools/main.cpp).

/// Malformed configuration or command-line input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required input value is missing or out of its documented range.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The argument is well-formed but outside the operation's domain,
/// e.g. a word that is not special symmetric handed to the hypergraph bridge.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration cap or search budget would be exceeded.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical postcondition (symmetry, PSD, convergence) was violated.
class NumericalContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sscov
