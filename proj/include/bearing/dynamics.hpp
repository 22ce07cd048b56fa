#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bearing/geometry.hpp"
#include "bearing/graph.hpp"
#include "bearing/rigidity.hpp"

namespace bearing {

enum class SystemKind { leaderless, leader_follower, localization };

std::string_view to_string(SystemKind kind);
/// Throws std::invalid_argument on an unknown name.
SystemKind system_kind_from_string(std::string_view name);

/// Desired bearing per oriented edge, optionally with the configuration it
/// was derived from. Bearings are stored for the head -> tail direction, so
/// g*_ji = -g*_ij holds by construction.
class BearingTarget {
 public:
  /// Throws CollocationError if p_star has collocated neighbors.
  static BearingTarget from_configuration(const NetworkGraph& g, const Configuration& p_star);
  /// Throws TargetError unless g_star has m*d entries and every block is unit norm (1e-9).
  static BearingTarget from_bearings(const NetworkGraph& g, int d, Eigen::VectorXd g_star);

  int dimension() const noexcept { return d_; }
  const Eigen::VectorXd& bearings() const noexcept { return g_star_; }
  Eigen::VectorXd bearing(int k) const { return g_star_.segment(k * d_, d_); }
  const std::optional<Configuration>& configuration() const noexcept { return p_star_; }

 private:
  BearingTarget(int d, Eigen::VectorXd g_star, std::optional<Configuration> p_star)
      : d_(d), g_star_(std::move(g_star)), p_star_(std::move(p_star)) {}

  int d_;
  Eigen::VectorXd g_star_;
  std::optional<Configuration> p_star_;
};

/// Bearing control with auxiliary ranges:
/// u_i = -sum_{j in N_i} P_{g_ij} g*_ij / |z_ij|, which stacks to R_b^T g*.
Eigen::VectorXd leaderless_control(const NetworkGraph& g, const Eigen::Ref<const Eigen::VectorXd>& p,
                                   int d, const BearingTarget& target);

/// Bearing-only control with pinned leaders (the first leader_count agents):
/// u_i = 0 for leaders, sum_{j in N_i} (g_ij - g*_ij) for followers.
Eigen::VectorXd leader_follower_control(const NetworkGraph& g,
                                        const Eigen::Ref<const Eigen::VectorXd>& p, int d,
                                        const BearingTarget& target, int leader_count);

/// -B_ff p_hat_f - B_fl p_l. Throws NotLocalizableError if B_ff is not positive definite.
Eigen::VectorXd localization_update(const Eigen::Ref<const Eigen::VectorXd>& estimates,
                                    const Eigen::Ref<const Eigen::VectorXd>& anchors,
                                    const RigidityMatrices& matrices);

struct ErrorSignal {
  Eigen::VectorXd e;
  double norm = 0.0;

  Eigen::VectorXd block(int k, int d) const { return e.segment(k * d, d); }
};

/// e_a = g - g*, one d-block per edge.
ErrorSignal error_leaderless(const NetworkGraph& g, const Eigen::Ref<const Eigen::VectorXd>& p,
                             int d, const BearingTarget& target);

/// e_b = p - p*. Throws LeaderDriftError if a leader row differs from p*.
ErrorSignal error_leader_follower(const Eigen::Ref<const Eigen::VectorXd>& p,
                                  const Eigen::Ref<const Eigen::VectorXd>& p_star, int d,
                                  int leader_count);

/// e_c = p_hat_f - p_f.
ErrorSignal error_localization(const Eigen::Ref<const Eigen::VectorXd>& estimates,
                               const Eigen::Ref<const Eigen::VectorXd>& truth);

/// Which agents a system's disturbance acts on: everyone when leaderless,
/// followers only otherwise.
std::vector<bool> disturbed_agents(SystemKind kind, int node_count, int leader_count);

}  // namespace bearing
