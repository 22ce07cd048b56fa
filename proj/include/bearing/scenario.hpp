#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bearing/bounds.hpp"
#include "bearing/disturbance.hpp"
#include "bearing/dynamics.hpp"
#include "bearing/integrator.hpp"

namespace bearing {

inline constexpr int kScenarioSchemaVersion = 1;

/// One agent as written in a scenario file. Ids are 1-based.
struct AgentSpec {
  int id = 0;
  bool leader = false;
  /// Initial position (formation systems) or true position (localization).
  std::vector<double> position;
  /// Desired position p*_i.
  std::optional<std::vector<double>> target;
  /// Initial estimate of a localization follower.
  std::optional<std::vector<double>> estimate;

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

/// Explicit desired bearing from agent `from` toward agent `to`.
struct BearingSpec {
  int from = 0;
  int to = 0;
  std::vector<double> g;

  friend bool operator==(const BearingSpec&, const BearingSpec&) = default;
};

enum class TargetMode { configuration, bearings };

struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::none;
  /// Exactly one of the following three selects the amplitudes when kind != none.
  std::optional<double> amplitude;                // every disturbed agent
  std::optional<std::vector<double>> amplitudes;  // aligned with the agents list
  std::optional<double> fraction_of_threshold;    // F as a fraction of the admissible limit
  double omega = 1.0;

  friend bool operator==(const DisturbanceSpec&, const DisturbanceSpec&) = default;
};

struct IntegratorSpec {
  double dt = 1e-3;
  double duration = 10.0;
  int record_stride = 10;
  Method method = Method::rk4;

  friend bool operator==(const IntegratorSpec&, const IntegratorSpec&) = default;
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  SystemKind system = SystemKind::leaderless;
  int dimension = 2;
  std::vector<AgentSpec> agents;
  std::vector<std::pair<int, int>> edges;  // agent ids
  TargetMode target_mode = TargetMode::configuration;
  std::vector<BearingSpec> bearings;
  DisturbanceSpec disturbance;
  IntegratorSpec integrator;
  BoundParams bounds;
  double settle_fraction = 0.2;
  std::uint64_t seed = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates a JSON scenario. Throws ValidationError listing every
/// problem found (syntax errors carry a line number, schema errors a JSON pointer).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& s);

std::string_view to_string(TargetMode mode);
std::string_view to_string(Method method);

}  // namespace bearing
