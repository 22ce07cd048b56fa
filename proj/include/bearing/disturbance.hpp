#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bearing {

enum class DisturbanceKind { none, uniform_ball, sinusoidal };

std::string_view to_string(DisturbanceKind kind);
/// Throws std::invalid_argument on an unknown name.
DisturbanceKind disturbance_kind_from_string(std::string_view name);

/// Bounded additive velocity disturbance. Agent i receives a vector of norm at
/// most amplitudes[i] when applies_to[i] is set and zero otherwise, so the
/// stacked disturbance never exceeds bound().
struct DisturbanceProfile {
  DisturbanceKind kind = DisturbanceKind::none;
  int dimension = 2;
  std::vector<double> amplitudes;
  std::vector<bool> applies_to;
  double omega = 1.0;  // sinusoidal angular frequency
  std::uint64_t seed = 0;

  /// sqrt of the summed squared amplitudes of the disturbed agents.
  double bound() const;
};

/// Deterministic in (profile, t): uniform_ball draws each disturbed agent's
/// vector uniformly from its ball; sinusoidal emits v_i sin(omega t + phi_i) u_i
/// with phase and unit direction fixed per agent by the seed.
Eigen::VectorXd generate_disturbance(const DisturbanceProfile& profile, double t);

}  // namespace bearing
