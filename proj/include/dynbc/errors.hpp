#pragma once

#include <stdexcept>
#include <string>

namespace dynbc {

/// Violated operation contract: mismatched sizes, negative time step,
/// a scheme used outside its coordinate system, and the like.
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// Invalid problem or experiment configuration (bad field value, wrong
/// geometry for a closed-form reference, inconsistent step counts).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure during analysis: degenerate fit window, zero
/// reference norm, non-positive errors under a log fit.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while emitting results.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractError(what);
}

}  // namespace detail

}  // namespace dynbc
