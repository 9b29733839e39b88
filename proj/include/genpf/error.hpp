#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace genpf {

/// Base for every error the library raises on a well-formed call that
/// cannot be completed. Contract violations use std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public Error {
 public:
  /// `needed` saturates at UINT64_MAX.
  BudgetExceeded(std::uint64_t needed, std::uint64_t budget)
      : Error("budget exceeded: " + std::to_string(needed) + " selections > budget " +
              std::to_string(budget)),
        needed_(needed) {}
  std::uint64_t needed() const { return needed_; }

 private:
  std::uint64_t needed_;
};

class ReducibleSystem : public Error {
 public:
  using Error::Error;
};

class Unclassifiable : public Error {
 public:
  using Error::Error;
};

class DegenerateScenario : public Error {
 public:
  using Error::Error;
};

}  // namespace genpf
