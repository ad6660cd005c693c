#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssp {

/// Base of every error raised by the library. Callers that only need to
/// report a failure can catch this; the derived types carry the details.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidOrder : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class DegenerateMethod : public Error {
 public:
  using Error::Error;
};

class FamilyInfeasible : public Error {
 public:
  using Error::Error;
};

class UnsupportedParameter : public Error {
 public:
  using Error::Error;
};

class GridTooSmall : public Error {
 public:
  using Error::Error;
};

class IncompatibleScheme : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A stage produced a non-finite value. `step` is the zero-based step index
/// within an evolve call (0 for a bare step), `stage` the zero-based stage.
class BlowUp : public Error {
 public:
  BlowUp(std::size_t step, std::size_t stage)
      : Error("non-finite value in stage " + std::to_string(stage) +
              " of step " + std::to_string(step)),
        step_(step),
        stage_(stage) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t stage() const noexcept { return stage_; }

 private:
  std::size_t step_;
  std::size_t stage_;
};

}  // namespace ssp
