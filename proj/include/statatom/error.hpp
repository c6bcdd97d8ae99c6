#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace statatom {

/// Input outside the mathematical domain of an operation (negative radius, q > 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solve ran out of iterations. Carries the last bracket on the
/// iteration variable so callers can report or restart from it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// The operation is well defined in principle but not implemented for this case.
class UnsupportedCase : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Itemized input-file errors, one entry per offending line.
class ParseError : public std::runtime_error {
 public:
  struct Item {
    std::size_t line;
    std::string message;
  };

  explicit ParseError(std::vector<Item> items)
      : std::runtime_error(format(items)), items_(std::move(items)) {}

  const std::vector<Item>& items() const noexcept { return items_; }

 private:
  static std::string format(const std::vector<Item>& items) {
    std::string out = "reference data rejected:";
    for (const auto& it : items) {
      out += "\n  line " + std::to_string(it.line) + ": " + it.message;
    }
    return out;
  }

  std::vector<Item> items_;
};

}  // namespace statatom
