#include "bearing/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bearing/errors.hpp"

namespace bearing {

namespace {

constexpr double kUnitTol = 1e-9;

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::leaderless: return "leaderless";
    case SystemKind::leader_follower: return "leader_follower";
    case SystemKind::localization: return "localization";
  }
  return "leaderless";
}

SystemKind system_kind_from_string(std::string_view name) {
  if (name == "leaderless") return SystemKind::leaderless;
  if (name == "leader_follower") return SystemKind::leader_follower;
  if (name == "localization") return SystemKind::localization;
  throw std::invalid_argument("unknown system kind '" + std::string(name) + "'");
}

BearingTarget BearingTarget::from_configuration(const NetworkGraph& g, const Configuration& p_star) {
  EdgeKinematics kin = edge_kinematics(g, p_star);
  return BearingTarget(p_star.dimension(), std::move(kin.g), p_star);
}

BearingTarget BearingTarget::from_bearings(const NetworkGraph& g, int d, Eigen::VectorXd g_star) {
  if (d < 2) throw TargetError("dimension must be at least 2");
  if (g_star.size() != static_cast<Eigen::Index>(g.edge_count()) * d)
    throw TargetError("expected " + std::to_string(g.edge_count() * d) +
                      " bearing entries, got " + std::to_string(g_star.size()));
  for (int k = 0; k < g.edge_count(); ++k) {
    const double norm = g_star.segment(k * d, d).norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitTol)
      throw TargetError("desired bearing of edge " + std::to_string(k + 1) +
                        " has norm " + std::to_string(norm) + ", expected 1");
  }
  return BearingTarget(d, std::move(g_star), std::nullopt);
}

Eigen::VectorXd leaderless_control(const NetworkGraph& g, const Eigen::Ref<const Eigen::VectorXd>& p,
                                   int d, const BearingTarget& target) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(p.size());
  for (int k = 0; k < g.edge_count(); ++k) {
    const auto [i, j] = g.edges()[k];
    const Eigen::VectorXd z = p.segment(j * d, d) - p.segment(i * d, d);
    const double len = z.norm();
    if (!(len > kCollocationGuard)) throw CollocationError(static_cast<std::size_t>(k), len);
    const Eigen::VectorXd gk = z / len;
    const Eigen::VectorXd gs = target.bearings().segment(k * d, d);
    // P_{g_ij} g*_ij / |z_ij|; the reverse edge contributes the negation.
    const Eigen::VectorXd w = (gs - gk * gk.dot(gs)) / len;
    u.segment(i * d, d) -= w;
    u.segment(j * d, d) += w;
  }
  return u;
}

Eigen::VectorXd leader_follower_control(const NetworkGraph& g,
                                        const Eigen::Ref<const Eigen::VectorXd>& p, int d,
                                        const BearingTarget& target, int leader_count) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(p.size());
  for (int k = 0; k < g.edge_count(); ++k) {
    const auto [i, j] = g.edges()[k];
    const Eigen::VectorXd z = p.segment(j * d, d) - p.segment(i * d, d);
    const double len = z.norm();
    if (!(len > kCollocationGuard)) throw CollocationError(static_cast<std::size_t>(k), len);
    const Eigen::VectorXd diff = z / len - target.bearings().segment(k * d, d);
    if (i >= leader_count) u.segment(i * d, d) += diff;
    if (j >= leader_count) u.segment(j * d, d) -= diff;
  }
  return u;
}

Eigen::VectorXd localization_update(const Eigen::Ref<const Eigen::VectorXd>& estimates,
                                    const Eigen::Ref<const Eigen::VectorXd>& anchors,
                                    const RigidityMatrices& matrices) {
  if (estimates.size() != matrices.ff.rows() || anchors.size() != matrices.fl.cols())
    throw DimensionError("estimate/anchor sizes do not match the bearing Laplacian blocks");
  if (matrices.ff.size() == 0 || matrices.ff.llt().info() != Eigen::Success)
    throw NotLocalizableError("B_ff is not positive definite");
  return -matrices.ff * estimates - matrices.fl * anchors;
}

ErrorSignal error_leaderless(const NetworkGraph& g, const Eigen::Ref<const Eigen::VectorXd>& p,
                             int d, const BearingTarget& target) {
  const EdgeKinematics kin = edge_kinematics(g, p, d);
  ErrorSignal out{kin.g - target.bearings(), 0.0};
  out.norm = out.e.norm();
  return out;
}

ErrorSignal error_leader_follower(const Eigen::Ref<const Eigen::VectorXd>& p,
                                  const Eigen::Ref<const Eigen::VectorXd>& p_star, int d,
                                  int leader_count) {
  if (p.size() != p_star.size()) throw DimensionError("p and p* differ in size");
  for (int i = 0; i < leader_count * d; ++i)
    if (p(i) != p_star(i))
      throw LeaderDriftError("leader " + std::to_string(i / d + 1) +
                             " moved away from its pinned position");
  ErrorSignal out{p - p_star, 0.0};
  out.norm = out.e.norm();
  return out;
}

ErrorSignal error_localization(const Eigen::Ref<const Eigen::VectorXd>& estimates,
                               const Eigen::Ref<const Eigen::VectorXd>& truth) {
  if (estimates.size() != truth.size()) throw DimensionError("estimate and truth differ in size");
  ErrorSignal out{estimates - truth, 0.0};
  out.norm = out.e.norm();
  return out;
}

std::vector<bool> disturbed_agents(SystemKind kind, int node_count, int leader_count) {
  std::vector<bool> out(node_count, true);
  if (kind != SystemKind::leaderless)
    for (int i = 0; i < leader_count && i < node_count; ++i) out[i] = false;
  return out;
}

}  // namespace bearing
