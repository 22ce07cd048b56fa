#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bearing {

/// Oriented edge. Node indices are zero-based and head < tail.
struct Edge {
  int head;
  int tail;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with a fixed orientation (head = smaller index).
///
/// Edge order is preserved from construction, so edge index k is stable.
/// The graph is immutable once built.
class NetworkGraph {
 public:
  /// Pairs may be given in either order; they are oriented head < tail.
  /// Throws GraphError on self-loops, duplicates, out-of-range nodes or n < 2.
  NetworkGraph(int node_count, const std::vector<std::pair<int, int>>& edges);

  int node_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sorted neighbor indices of node i. Throws GraphError if i is out of range.
  std::vector<int> neighbors(int i) const;

  int connected_components() const;

  friend bool operator==(const NetworkGraph&, const NetworkGraph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// m x n incidence matrix: -1 at the head, +1 at the tail of each edge row.
Eigen::MatrixXd incidence_matrix(const NetworkGraph& g);

/// H kron I_d, the incidence operator acting on stacked d-vectors.
Eigen::MatrixXd lifted_incidence(const NetworkGraph& g, int d);

/// Leader/follower split. Indices are zero-based and kept sorted.
class AgentPartition {
 public:
  /// Throws PartitionError if the sets overlap, miss a node or leave range.
  AgentPartition(int node_count, std::vector<int> leaders, std::vector<int> followers);
  /// Everyone not listed as a leader is a follower.
  static AgentPartition from_leaders(int node_count, std::vector<int> leaders);

  const std::vector<int>& leaders() const noexcept { return leaders_; }
  const std::vector<int>& followers() const noexcept { return followers_; }
  int leader_count() const noexcept { return static_cast<int>(leaders_.size()); }
  int follower_count() const noexcept { return static_cast<int>(followers_.size()); }

 private:
  std::vector<int> leaders_;
  std::vector<int> followers_;
};

/// Result of moving leaders to the front of the index range.
struct Relabeling {
  NetworkGraph graph;
  std::vector<int> new_of_old;  // new_of_old[old] = new
  std::vector<int> old_of_new;
  int leader_count;

  /// Permute stacked d-vectors from the original to the canonical order.
  Eigen::VectorXd to_canonical(const Eigen::VectorXd& stacked, int d) const;
  Eigen::VectorXd to_original(const Eigen::VectorXd& stacked, int d) const;
};

/// Relabel so leaders occupy indices [0, n_l) in ascending original order,
/// followed by the followers in ascending order. Edge order is kept and each
/// edge is re-oriented head < tail under the new labels.
/// Throws PartitionError when fewer than min_leaders leaders are given.
Relabeling canonicalize_partition(const NetworkGraph& g, const AgentPartition& part,
                                  int min_leaders = 0);

}  // namespace bearing
