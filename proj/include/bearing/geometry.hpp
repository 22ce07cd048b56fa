#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bearing/graph.hpp"

namespace bearing {

/// Edges shorter than this are treated as collocated.
inline constexpr double kCollocationGuard = 1e-9;
/// Relative tolerance of the parallel-vector test.
inline constexpr double kParallelTol = 1e-9;

/// n points in R^d stacked as one vector of length n*d.
class Configuration {
 public:
  /// Throws DimensionError if d < 2, the size is not a multiple of d,
  /// or an entry is not finite.
  Configuration(int d, Eigen::VectorXd stacked);
  static Configuration from_points(int d, const std::vector<Eigen::VectorXd>& points);

  int dimension() const noexcept { return d_; }
  int agent_count() const noexcept { return static_cast<int>(p_.size()) / d_; }
  const Eigen::VectorXd& stacked() const noexcept { return p_; }
  Eigen::VectorXd position(int i) const { return p_.segment(i * d_, d_); }

 private:
  int d_;
  Eigen::VectorXd p_;
};

/// Relative positions, bearings and edge lengths of a framework.
struct EdgeKinematics {
  Eigen::VectorXd z;            // stacked p_tail - p_head
  Eigen::VectorXd g;            // stacked unit bearings z_k / |z_k|
  std::vector<double> lengths;  // |z_k|

  Eigen::VectorXd relative(int k, int d) const { return z.segment(k * d, d); }
  Eigen::VectorXd bearing(int k, int d) const { return g.segment(k * d, d); }
};

/// I - x x^T / |x|^2. Throws CollocationError(0, |x|) for |x| <= kCollocationGuard.
Eigen::MatrixXd projection(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Throws CollocationError carrying the first edge with |z_k| <= kCollocationGuard.
EdgeKinematics edge_kinematics(const NetworkGraph& g, const Eigen::Ref<const Eigen::VectorXd>& p,
                               int d);
EdgeKinematics edge_kinematics(const NetworkGraph& g, const Configuration& c);

/// Parallel or antiparallel: |P_x y| <= kParallelTol |y|.
bool is_parallel(const Eigen::Ref<const Eigen::VectorXd>& x,
                 const Eigen::Ref<const Eigen::VectorXd>& y);

}  // namespace bearing
