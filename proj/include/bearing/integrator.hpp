#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bearing/disturbance.hpp"
#include "bearing/dynamics.hpp"
#include "bearing/graph.hpp"

namespace bearing {

enum class Method { rk4, euler };

struct IntegratorSettings {
  double dt = 1e-3;
  double duration = 10.0;
  int record_stride = 10;
  Method method = Method::rk4;
};

/// One of the three disturbed systems, in canonical agent order (leaders first).
struct SystemModel {
  SystemKind kind = SystemKind::leaderless;
  NetworkGraph graph;
  int dimension = 2;
  int leader_count = 0;
  /// Desired bearings; leader_follower additionally needs its configuration.
  std::optional<BearingTarget> target;
  /// True configuration of a localization network.
  Eigen::VectorXd truth;
};

struct SpectralSample {
  double lambda_min_plus = 0.0;
  double lambda_max = 0.0;
};

struct TraceEvent {
  std::size_t step = 0;
  double t = 0.0;
  std::string what;
};

/// Recorded trajectory. States are full configurations for the formation
/// systems and follower estimates for localization.
struct SimTrace {
  SystemKind kind = SystemKind::leaderless;
  double dt = 0.0;
  int record_stride = 1;
  std::size_t steps = 0;
  std::vector<std::size_t> step_index;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> error_norms;
  /// Leaderless only: spectrum of R_b R_b^T at each recorded sample.
  std::vector<SpectralSample> spectral;
  /// Leaderless only: running extrema over every integrator step.
  double lambda_min_plus_t = std::numeric_limits<double>::infinity();
  double lambda_max_t = 0.0;
  std::vector<TraceEvent> events;
  bool aborted = false;

  std::size_t size() const noexcept { return times.size(); }
};

/// Fixed-step integration of x' = control(x) + f(t), with f sampled at the
/// start of each step and held for the whole step. Samples are recorded
/// every record_stride steps and at the final step.
///
/// Rigidity (leaderless, at the initial configuration) or localizability
/// (otherwise) is verified first and reported as NotRigidError or
/// NotLocalizableError. Mid-run collocation or a non-finite state ends the
/// run early: the trace is truncated, an event is added and aborted is set.
SimTrace integrate(const SystemModel& model, const Eigen::VectorXd& initial,
                   const DisturbanceProfile& profile, const IntegratorSettings& settings);

}  // namespace bearing
