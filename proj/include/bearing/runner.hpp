#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bearing/bounds.hpp"
#include "bearing/graph.hpp"
#include "bearing/integrator.hpp"
#include "bearing/rigidity.hpp"
#include "bearing/scenario.hpp"

namespace bearing {

/// A scenario translated into canonical (leaders-first) numeric form.
struct PreparedScenario {
  Scenario scenario;
  Relabeling labels;  // canonical index <-> position in scenario.agents
  SystemModel model;
  /// Configuration the pre-checks and bounds refer to: p* for formation
  /// systems (initial positions if leaderless without a target configuration)
  /// and the true positions for localization.
  Configuration reference;
  Eigen::VectorXd initial;  // integrator initial state
};

/// Throws ValidationError when the scenario cannot be turned into a system
/// (for example a collocated target).
PreparedScenario prepare(const Scenario& s);

struct PrecheckSummary {
  std::string kind;  // "rigidity" or "localizability"
  bool passed = false;
  int rank = 0;
  int expected_rank = 0;
  std::optional<double> lambda_min_bff;
  std::string detail;
};

PrecheckSummary check_rigidity(const PreparedScenario& p);
PrecheckSummary check_localizability(const PreparedScenario& p);

enum class RunStatus { completed, precheck_failed, aborted };

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<double> duration;
};

struct RunResult {
  std::string scenario_name;
  SystemKind kind = SystemKind::leaderless;
  int dimension = 2;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::completed;
  std::string message;
  PrecheckSummary precheck;
  std::optional<SimTrace> trace;
  std::optional<BoundReport> report;
  /// Scenario agent ids in canonical order.
  std::vector<int> canonical_ids;
  int leader_count = 0;
  double disturbance_bound = 0.0;
  /// Leaderless: |e_a(0)|^2 for judging closeness to the target shape.
  std::optional<double> initial_error_sq;
  double wall_seconds = 0.0;
};

/// Pre-check, integrate, bound and judge. Never throws for pre-check failures
/// or mid-run aborts; those are reported through RunResult::status.
RunResult run(const Scenario& s, const RunOverrides& overrides = {});

/// Bound computable without integrating. Leaderless scenarios get a snapshot
/// at the reference configuration, which is indicative only.
BoundReport bounds_without_simulation(const Scenario& s);

/// Least-squares follower positions for a localization or leader-follower
/// scenario, in canonical follower order.
Eigen::VectorXd oracle_positions(const PreparedScenario& p);

/// Process exit code for a finished run: 0 contained, 3 pre-check failure,
/// 4 bound violated, 5 runtime abort.
int exit_code(const RunResult& r);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitPrecheck = 3;
inline constexpr int kExitBoundViolated = 4;
inline constexpr int kExitAbort = 5;

}  // namespace bearing
