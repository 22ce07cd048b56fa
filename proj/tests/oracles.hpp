#pragma once

// Reference computations written independently of the library, used to
// cross-check its results in tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Pairs = std::vector<std::pair<int, int>>;

// Row k: -1 at min(i, j), +1 at max(i, j).
inline Eigen::MatrixXd incidence(int n, const Pairs& edges) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<int>(edges.size()), n);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [a, b] = edges[k];
    h(k, std::min(a, b)) = -1.0;
    h(k, std::max(a, b)) = 1.0;
  }
  return h;
}

inline Eigen::MatrixXd kron_identity(const Eigen::MatrixXd& h, int d) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(h.rows() * d, h.cols() * d);
  for (int r = 0; r < h.rows(); ++r)
    for (int c = 0; c < h.cols(); ++c)
      for (int k = 0; k < d; ++k) out(r * d + k, c * d + k) = h(r, c);
  return out;
}

inline Eigen::MatrixXd projection(const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size());
  const double nn = x.squaredNorm();
  Eigen::MatrixXd p(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = (i == j ? 1.0 : 0.0) - x(i) * x(j) / nn;
  return p;
}

// Rank by Gaussian elimination with full pivoting.
inline int rank(Eigen::MatrixXd a, double rel_tol = 1e-9) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  int r = 0;
  const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  for (int step = 0; step < std::min(rows, cols); ++step) {
    int pr = step, pc = step;
    double best = 0.0;
    for (int i = step; i < rows; ++i)
      for (int j = step; j < cols; ++j)
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pr = i;
          pc = j;
        }
    if (best <= rel_tol * scale) break;
    a.row(step).swap(a.row(pr));
    a.col(step).swap(a.col(pc));
    for (int i = step + 1; i < rows; ++i) a.row(i) -= (a(i, step) / a(step, step)) * a.row(step);
    ++r;
  }
  return r;
}

// Block row k holds -P/|z| at the head agent and +P/|z| at the tail agent.
inline Eigen::MatrixXd rigidity(int n, const Pairs& edges, const Eigen::VectorXd& p, int d) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<int>(edges.size()) * d, n * d);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const int i = std::min(edges[k].first, edges[k].second);
    const int j = std::max(edges[k].first, edges[k].second);
    const Eigen::VectorXd z = p.segment(j * d, d) - p.segment(i * d, d);
    const Eigen::MatrixXd blk = projection(z) / z.norm();
    r.block(k * d, i * d, d, d) = -blk;
    r.block(k * d, j * d, d, d) = blk;
  }
  return r;
}

// Accumulates +P on the diagonal blocks and -P off the diagonal, edge by edge.
inline Eigen::MatrixXd laplacian(int n, const Pairs& edges, const Eigen::VectorXd& p, int d) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n * d, n * d);
  for (const auto& [a, c] : edges) {
    const Eigen::MatrixXd pr = projection(p.segment(c * d, d) - p.segment(a * d, d));
    b.block(a * d, a * d, d, d) += pr;
    b.block(c * d, c * d, d, d) += pr;
    b.block(a * d, c * d, d, d) -= pr;
    b.block(c * d, a * d, d, d) -= pr;
  }
  return b;
}

inline Pairs complete_graph(int n) {
  Pairs e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

// Random configuration whose agents are pairwise at least min_sep apart.
inline Eigen::VectorXd random_configuration(std::mt19937_64& rng, int n, int d,
                                            double min_sep = 0.2) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Eigen::VectorXd p(n * d);
  for (;;) {
    for (int i = 0; i < n * d; ++i) p(i) = u(rng);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        ok = (p.segment(i * d, d) - p.segment(j * d, d)).norm() >= min_sep;
    if (ok) return p;
  }
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = nd(rng);
  } while (v.norm() < 1e-3);
  return v.normalized();
}

}  // namespace oracle
