#pragma once

#include <stdexcept>
#include <string>

namespace gch {

// Parameter / grid preconditions.
struct DegenerateParams : std::invalid_argument {
  explicit DegenerateParams(const std::string& msg) : std::invalid_argument(msg) {}
};

struct BadGrid : std::invalid_argument {
  explicit BadGrid(const std::string& msg) : std::invalid_argument(msg) {}
};

// Amplitude existence.
struct NoRealAmplitude : std::domain_error {
  double discriminant;
  explicit NoRealAmplitude(double disc)
      : std::domain_error("no real amplitude, discriminant " + std::to_string(disc)),
        discriminant(disc) {}
};

struct BranchUnavailable : std::domain_error {
  explicit BranchUnavailable(const std::string& msg) : std::domain_error(msg) {}
};

// Quadrature and oracle failures.
struct ToleranceNotMet : std::runtime_error {
  explicit ToleranceNotMet(const std::string& msg) : std::runtime_error(msg) {}
};

struct OracleToleranceNotMet : std::runtime_error {
  explicit OracleToleranceNotMet(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation at a crest / kernel kink.
struct AtKink : std::domain_error {
  explicit AtKink(const std::string& msg) : std::domain_error(msg) {}
};

struct PointOnKink : std::domain_error {
  explicit PointOnKink(const std::string& msg) : std::domain_error(msg) {}
};

// Time stepping.
struct NonFiniteState : std::runtime_error {
  double time;
  explicit NonFiniteState(double t)
      : std::runtime_error("non-finite state at t = " + std::to_string(t)), time(t) {}
};

struct CflViolation : std::runtime_error {
  explicit CflViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct InsufficientRecords : std::invalid_argument {
  explicit InsufficientRecords(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace gch
