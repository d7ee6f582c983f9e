#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fsum {

/// Input data violates a schema rule or a model invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
  explicit ValidationError(const std::string& violation)
      : ValidationError(std::vector<std::string>{violation}) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// The problem is outside the hypotheses of the intersection-form computations
/// (divisible surface class or torsion in first homology).
class ScopeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The form cannot be classified from the available data.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that holds for every validated input failed. Always a bug or
/// an input inconsistency that validation did not catch.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fsum
