#pragma once

#include <stdexcept>
#include <string>

namespace phc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element index outside [0, order) for its group.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

/// Bad arguments or malformed input (spec strings, code files, parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation refused because its estimated work exceeds a configured cap.
class FeasibilityError : public Error {
 public:
  FeasibilityError(const std::string& what, std::string estimated_work)
      : Error(what + " (estimated work: " + estimated_work + ")"),
        estimated_work_(std::move(estimated_work)) {}

  const std::string& estimated_work() const noexcept { return estimated_work_; }

 private:
  std::string estimated_work_;
};

/// Two routes that must agree did not; signals a bug or a wrong input count.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace phc
