#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace opdyn {

// Contract violations (wrong lengths, infeasible arguments) are reported as
// std::invalid_argument. The types below cover input and runtime failures.

/// Malformed text input. `line` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a domain invariant (self-loop, isolated
/// node, opinion outside [0,1], ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exact enumeration was asked to do more work than its guard allows.
class RefusalError : public std::runtime_error {
 public:
  RefusalError(const std::string& what, std::uint64_t count)
      : std::runtime_error(what), count_(count) {}
  std::uint64_t enumeration_count() const noexcept { return count_; }

 private:
  std::uint64_t count_;
};

/// A numerical routine failed in a way the model says cannot happen.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace opdyn
