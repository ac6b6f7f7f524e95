#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace drillboom {

/// Raised for non-finite or otherwise unusable numeric inputs.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a joint vector leaves the configured limit box.
class OutOfRange : public std::out_of_range {
 public:
  OutOfRange(const std::string& what, std::vector<int> joints)
      : std::out_of_range(what), joints_(std::move(joints)) {}

  /// 1-based indices of the offending joints.
  const std::vector<int>& joints() const noexcept { return joints_; }

 private:
  std::vector<int> joints_;
};

/// Raised when an API is called out of order (e.g. stepping a finished episode).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when training produces a non-finite loss or parameter.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace drillboom
