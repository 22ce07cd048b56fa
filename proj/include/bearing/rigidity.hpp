#pragma once

#include <optional>

#include <Eigen/Dense>

#include "bearing/geometry.hpp"
#include "bearing/graph.hpp"

namespace bearing {

/// Bearing rigidity matrix and bearing Laplacian of a framework, with the
/// Laplacian split into leader/follower blocks (leaders first).
struct RigidityMatrices {
  Eigen::MatrixXd rigidity;  // md x nd
  Eigen::MatrixXd laplacian;  // nd x nd
  Eigen::MatrixXd ll, lf, fl, ff;
  int dimension = 0;
  int leader_count = 0;
};

/// Eigen-structure of a symmetric positive semidefinite matrix.
struct SpectralSummary {
  /// Smallest eigenvalue above zero_tol; empty when the matrix is numerically zero.
  std::optional<double> lambda_min_plus;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int rank = 0;
  int null_dim = 0;
  double zero_tol = 0.0;
};

/// Eigenvalues at or below max(dim) * eps * lambda_max count as zero.
/// Throws SpectralError if |M - M^T| exceeds 1e-10 entrywise.
SpectralSummary spectral_summary(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Spectrum of R^T R derived from the singular values of R (rank uses
/// max(rows, cols) * eps * sigma_max).
SpectralSummary gram_spectrum(const Eigen::Ref<const Eigen::MatrixXd>& r);

/// R_b = diag(P_{g_k} / |z_k|) H_bar.
Eigen::MatrixXd bearing_rigidity_matrix(const NetworkGraph& g, const Eigen::Ref<const Eigen::VectorXd>& p,
                                        int d);
Eigen::MatrixXd bearing_rigidity_matrix(const NetworkGraph& g, const Configuration& c);

/// B = H_bar^T diag(P_{g_k}) H_bar assembled blockwise, plus R_b. The graph must
/// already be in canonical order with leader_count leaders first.
RigidityMatrices bearing_laplacian(const NetworkGraph& g, const Configuration& c, int leader_count);

struct RigidityCheck {
  bool rigid = false;
  int rank = 0;
  int expected_rank = 0;
  SpectralSummary spectrum;  // of R_b^T R_b
  /// Largest |R_b v| over the normalized translations and the configuration itself.
  double trivial_motion_residual = 0.0;
};

/// Infinitesimal bearing rigidity: rank(R_b) == nd - d - 1.
RigidityCheck is_infinitesimally_bearing_rigid(const NetworkGraph& g, const Configuration& c);

struct LocalizabilityCheck {
  bool localizable = false;
  SpectralSummary follower_block;  // of B_ff
  RigidityMatrices matrices;
};

/// Bearing localizability: B_ff positive definite. Throws PartitionError
/// when fewer than two leaders or no followers are present.
LocalizabilityCheck is_bearing_localizable(const NetworkGraph& g, const Configuration& c,
                                           int leader_count);

/// Spectral norm of H_bar (equal to that of H).
double incidence_norm(const NetworkGraph& g);

}  // namespace bearing
