#include "bearing/geometry.hpp"

#include <string>

#include "bearing/errors.hpp"

namespace bearing {

Configuration::Configuration(int d, Eigen::VectorXd stacked) : d_(d), p_(std::move(stacked)) {
  if (d_ < 2) throw DimensionError("dimension must be at least 2, got " + std::to_string(d_));
  if (p_.size() % d_ != 0)
    throw DimensionError("stacked configuration of length " + std::to_string(p_.size()) +
                         " is not a multiple of d = " + std::to_string(d_));
  if (!p_.allFinite()) throw DimensionError("configuration has non-finite entries");
}

Configuration Configuration::from_points(int d, const std::vector<Eigen::VectorXd>& points) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(points.size()) * d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d)
      throw DimensionError("agent " + std::to_string(i + 1) + " has " +
                           std::to_string(points[i].size()) + " coordinates, expected " +
                           std::to_string(d));
    p.segment(static_cast<Eigen::Index>(i) * d, d) = points[i];
  }
  return Configuration(d, std::move(p));
}

Eigen::MatrixXd projection(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double norm = x.norm();
  if (!(norm > kCollocationGuard)) throw CollocationError(0, norm);
  const Eigen::VectorXd u = x / norm;
  return Eigen::MatrixXd::Identity(x.size(), x.size()) - u * u.transpose();
}

EdgeKinematics edge_kinematics(const NetworkGraph& g, const Eigen::Ref<const Eigen::VectorXd>& p,
                               int d) {
  const int m = g.edge_count();
  EdgeKinematics k{Eigen::VectorXd(m * d), Eigen::VectorXd(m * d), std::vector<double>(m)};
  for (int e = 0; e < m; ++e) {
    const auto& edge = g.edges()[e];
    const Eigen::VectorXd z = p.segment(edge.tail * d, d) - p.segment(edge.head * d, d);
    const double len = z.norm();
    if (!(len > kCollocationGuard)) throw CollocationError(static_cast<std::size_t>(e), len);
    k.z.segment(e * d, d) = z;
    k.g.segment(e * d, d) = z / len;
    k.lengths[e] = len;
  }
  return k;
}

EdgeKinematics edge_kinematics(const NetworkGraph& g, const Configuration& c) {
  if (c.agent_count() != g.node_count())
    throw DimensionError("configuration has " + std::to_string(c.agent_count()) +
                         " agents but the graph has " + std::to_string(g.node_count()));
  return edge_kinematics(g, c.stacked(), c.dimension());
}

bool is_parallel(const Eigen::Ref<const Eigen::VectorXd>& x,
                 const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw DimensionError("vectors of different dimension");
  if (!(y.norm() > kCollocationGuard)) throw CollocationError(0, y.norm());
  return (projection(x) * y).norm() <= kParallelTol * y.norm();
}

}  // namespace bearing
