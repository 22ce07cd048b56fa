#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bearing {

/// Base of every error raised by the library.
class BearingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two neighboring agents are (numerically) at the same position.
class CollocationError : public BearingError {
 public:
  CollocationError(std::size_t edge, double length);
  /// Zero-based edge index.
  std::size_t edge() const noexcept { return edge_; }
  double length() const noexcept { return length_; }

 private:
  std::size_t edge_;
  double length_;
};

class GraphError : public BearingError {
 public:
  using BearingError::BearingError;
};

class PartitionError : public BearingError {
 public:
  using BearingError::BearingError;
};

class DimensionError : public BearingError {
 public:
  using BearingError::BearingError;
};

/// Desired bearings are infeasible (wrong size, non-unit, inconsistent).
class TargetError : public BearingError {
 public:
  using BearingError::BearingError;
};

class SpectralError : public BearingError {
 public:
  using BearingError::BearingError;
};

class NotRigidError : public BearingError {
 public:
  using BearingError::BearingError;
};

class NotLocalizableError : public BearingError {
 public:
  using BearingError::BearingError;
};

/// A leader left its pinned position; only an integrator defect can cause it.
class LeaderDriftError : public BearingError {
 public:
  using BearingError::BearingError;
};

class BoundParamError : public BearingError {
 public:
  using BearingError::BearingError;
};

class AbortedTraceError : public BearingError {
 public:
  using BearingError::BearingError;
};

struct ValidationIssue {
  std::string where;  // "line 4" or a JSON pointer such as "/agents/2/position"
  std::string message;
};

/// Scenario validation failed; carries every issue found, not just the first.
class ValidationError : public BearingError {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

}  // namespace bearing
