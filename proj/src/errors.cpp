#include "bearing/errors.hpp"

namespace bearing {

CollocationError::CollocationError(std::size_t edge, double length)
    : BearingError("agents of edge " + std::to_string(edge + 1) +
                   " are collocated (|z| = " + std::to_string(length) + ")"),
      edge_(edge),
      length_(length) {}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string out = "scenario validation failed";
  for (const auto& issue : issues) out += "\n  " + issue.where + ": " + issue.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : BearingError(join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace bearing
