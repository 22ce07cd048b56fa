#include "bearing/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bearing/errors.hpp"

namespace bearing {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

SpectralSummary spectral_summary(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() != m.cols()) throw SpectralError("matrix is not square");
  if (m.size() == 0) throw SpectralError("empty matrix");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol)
    throw SpectralError("matrix is not symmetric (max |M - M^T| = " + std::to_string(asym) + ")");

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  SpectralSummary s;
  s.lambda_min = ev(0);
  s.lambda_max = ev(ev.size() - 1);
  s.zero_tol = static_cast<double>(m.rows()) * kEps * std::max(s.lambda_max, 0.0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > s.zero_tol) {
      if (!s.lambda_min_plus) s.lambda_min_plus = ev(i);
      ++s.rank;
    }
  }
  s.null_dim = static_cast<int>(m.rows()) - s.rank;
  return s;
}

SpectralSummary gram_spectrum(const Eigen::Ref<const Eigen::MatrixXd>& r) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending
  SpectralSummary s;
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  const double tol = static_cast<double>(std::max(r.rows(), r.cols())) * kEps * sigma_max;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++s.rank;
  s.lambda_max = sigma_max * sigma_max;
  if (s.rank > 0) s.lambda_min_plus = sv(s.rank - 1) * sv(s.rank - 1);
  s.lambda_min = s.rank == r.cols() ? *s.lambda_min_plus : 0.0;
  s.null_dim = static_cast<int>(r.cols()) - s.rank;
  s.zero_tol = tol * tol;
  return s;
}

Eigen::MatrixXd bearing_rigidity_matrix(const NetworkGraph& g,
                                        const Eigen::Ref<const Eigen::VectorXd>& p, int d) {
  const EdgeKinematics kin = edge_kinematics(g, p, d);
  const int m = g.edge_count();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m * d, g.node_count() * d);
  for (int k = 0; k < m; ++k) {
    const Eigen::MatrixXd block = projection(kin.g.segment(k * d, d)) / kin.lengths[k];
    r.block(k * d, g.edges()[k].head * d, d, d) = -block;
    r.block(k * d, g.edges()[k].tail * d, d, d) = block;
  }
  return r;
}

Eigen::MatrixXd bearing_rigidity_matrix(const NetworkGraph& g, const Configuration& c) {
  if (c.agent_count() != g.node_count())
    throw DimensionError("configuration and graph disagree on the number of agents");
  return bearing_rigidity_matrix(g, c.stacked(), c.dimension());
}

RigidityMatrices bearing_laplacian(const NetworkGraph& g, const Configuration& c,
                                   int leader_count) {
  const int d = c.dimension();
  const int n = g.node_count();
  if (leader_count < 0 || leader_count > n)
    throw PartitionError("leader count " + std::to_string(leader_count) + " out of range");

  const EdgeKinematics kin = edge_kinematics(g, c);
  RigidityMatrices out;
  out.dimension = d;
  out.leader_count = leader_count;
  out.rigidity = bearing_rigidity_matrix(g, c);
  out.laplacian = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int k = 0; k < g.edge_count(); ++k) {
    const auto [i, j] = g.edges()[k];
    const Eigen::MatrixXd pk = projection(kin.g.segment(k * d, d));
    out.laplacian.block(i * d, i * d, d, d) += pk;
    out.laplacian.block(j * d, j * d, d, d) += pk;
    out.laplacian.block(i * d, j * d, d, d) -= pk;
    out.laplacian.block(j * d, i * d, d, d) -= pk;
  }
  const int nl = leader_count * d;
  const int nf = (n - leader_count) * d;
  out.ll = out.laplacian.topLeftCorner(nl, nl);
  out.lf = out.laplacian.topRightCorner(nl, nf);
  out.fl = out.laplacian.bottomLeftCorner(nf, nl);
  out.ff = out.laplacian.bottomRightCorner(nf, nf);
  return out;
}

RigidityCheck is_infinitesimally_bearing_rigid(const NetworkGraph& g, const Configuration& c) {
  const int d = c.dimension();
  const int n = g.node_count();
  const Eigen::MatrixXd r = bearing_rigidity_matrix(g, c);

  RigidityCheck out;
  out.spectrum = gram_spectrum(r);
  out.rank = out.spectrum.rank;
  out.expected_rank = n * d - d - 1;
  out.rigid = out.rank == out.expected_rank;

  // Translations and scaling must always lie in the null space.
  double residual = 0.0;
  for (int axis = 0; axis < d; ++axis) {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(n * d);
    for (int i = 0; i < n; ++i) t(i * d + axis) = 1.0;
    residual = std::max(residual, (r * t.normalized()).norm());
  }
  residual = std::max(residual, (r * c.stacked().normalized()).norm());
  out.trivial_motion_residual = residual;
  return out;
}

LocalizabilityCheck is_bearing_localizable(const NetworkGraph& g, const Configuration& c,
                                           int leader_count) {
  if (leader_count < 2)
    throw PartitionError("bearing localization needs at least two leaders, got " +
                         std::to_string(leader_count));
  if (leader_count >= g.node_count()) throw PartitionError("no follower agents");

  LocalizabilityCheck out;
  out.matrices = bearing_laplacian(g, c, leader_count);
  out.follower_block = spectral_summary(out.matrices.ff);
  out.localizable = out.follower_block.lambda_min > out.follower_block.zero_tol &&
                    out.follower_block.lambda_min > 0.0;
  return out;
}

double incidence_norm(const NetworkGraph& g) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(incidence_matrix(g));
  return svd.singularValues()(0);
}

}  // namespace bearing
