#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hshare {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Size or shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class NotAUnitQuotient : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

// A pullback form vanished identically: the map lies inside the hyperplane.
class ZeroPullback : public Error {
 public:
  using Error::Error;
};

// Input does not satisfy an operation's precondition. The witness, when
// present, lists the indices that exhibit the violation.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what, std::vector<std::size_t> witness = {})
      : Error(what), witness_(std::move(witness)) {}
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

class NoFactorMatching : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A step that must succeed on any input meeting its hypotheses did not.
// Seeing one of these means the engine itself is wrong.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class NoPatternFound : public InconsistencyError {
 public:
  using InconsistencyError::InconsistencyError;
};

}  // namespace hshare
