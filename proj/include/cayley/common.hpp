#pragma once

// Shared numeric types and error classes.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cayley {

/// Exact nonnegative counts (tilings, triangulations, bounds).
using BigCount = boost::multiprecision::cpp_int;
using BigInt = boost::multiprecision::cpp_int;

/// Exact rationals for LP data and lifting matrices.
using Rational = boost::multiprecision::cpp_rational;

/// Input could not be interpreted (bad coordinates, bad document).
class MalformedInput : public std::runtime_error {
 public:
  explicit MalformedInput(const std::string& what,
                          std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(position ? what + " (at byte " + std::to_string(*position) + ")"
                                    : what),
        position_(position) {}

  std::optional<std::size_t> position() const { return position_; }

 private:
  std::optional<std::size_t> position_;
};

/// Argument outside the mathematical domain of an operation (k < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured resource budget was exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigCount factorial(int n) {
  BigCount r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::int64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::int64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace cayley
