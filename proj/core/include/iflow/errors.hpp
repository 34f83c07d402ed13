#pragma once

#include <stdexcept>
#include <string>

namespace iflow {

/// Base class for all iflow errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Poisson iteration exhausted its budget above tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(double residual, long iterations)
      : Error("poisson solve did not converge: residual " +
              std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const { return residual_; }
  long iterations() const { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

/// Simulation state exceeded the blow-up guard.
class DivergedStateError : public Error {
 public:
  DivergedStateError(double max_speed, double bound, double t)
      : Error("state diverged at t=" + std::to_string(t) + ": max speed " +
              std::to_string(max_speed) + " exceeds bound " +
              std::to_string(bound)),
        max_speed_(max_speed),
        t_(t) {}

  double max_speed() const { return max_speed_; }
  double t() const { return t_; }

 private:
  double max_speed_;
  double t_;
};

/// Bad magic, shape, or payload in a serialized field.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input with an out-of-contract value.
class ValidationError : public Error {
 public:
  ValidationError(std::string key_path, const std::string& detail)
      : Error(key_path + ": " + detail), key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

/// A tracer quad collapsed below measurable area.
class DegenerateQuadError : public Error {
 public:
  using Error::Error;
};

}  // namespace iflow
