#include "bearing/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "bearing/errors.hpp"

namespace bearing {

NetworkGraph::NetworkGraph(int node_count, const std::vector<std::pair<int, int>>& edges)
    : n_(node_count) {
  if (n_ < 2) throw GraphError("a network needs at least two nodes");
  std::set<std::pair<int, int>> seen;
  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
      throw GraphError("edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                       ") references a node outside 1.." + std::to_string(n_));
    if (a == b) throw GraphError("self-loop at node " + std::to_string(a + 1));
    const Edge e{std::min(a, b), std::max(a, b)};
    if (!seen.emplace(e.head, e.tail).second)
      throw GraphError("duplicate edge (" + std::to_string(e.head + 1) + "," +
                       std::to_string(e.tail + 1) + ")");
    edges_.push_back(e);
  }
}

std::vector<int> NetworkGraph::neighbors(int i) const {
  if (i < 0 || i >= n_) throw GraphError("node " + std::to_string(i + 1) + " out of range");
  std::vector<int> out;
  for (const auto& e : edges_) {
    if (e.head == i) out.push_back(e.tail);
    if (e.tail == i) out.push_back(e.head);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int NetworkGraph::connected_components() const {
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n_;
  for (const auto& e : edges_) {
    const int a = find(e.head), b = find(e.tail);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

Eigen::MatrixXd incidence_matrix(const NetworkGraph& g) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(g.edge_count(), g.node_count());
  for (int k = 0; k < g.edge_count(); ++k) {
    h(k, g.edges()[k].head) = -1.0;
    h(k, g.edges()[k].tail) = 1.0;
  }
  return h;
}

Eigen::MatrixXd lifted_incidence(const NetworkGraph& g, int d) {
  const int m = g.edge_count();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m * d, g.node_count() * d);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  for (int k = 0; k < m; ++k) {
    h.block(k * d, g.edges()[k].head * d, d, d) = -eye;
    h.block(k * d, g.edges()[k].tail * d, d, d) = eye;
  }
  return h;
}

AgentPartition::AgentPartition(int node_count, std::vector<int> leaders,
                               std::vector<int> followers)
    : leaders_(std::move(leaders)), followers_(std::move(followers)) {
  std::sort(leaders_.begin(), leaders_.end());
  std::sort(followers_.begin(), followers_.end());
  std::vector<int> seen(node_count, 0);
  for (const auto* set : {&leaders_, &followers_}) {
    for (int i : *set) {
      if (i < 0 || i >= node_count)
        throw PartitionError("partition references node " + std::to_string(i + 1) +
                             " outside 1.." + std::to_string(node_count));
      if (seen[i]++)
        throw PartitionError("node " + std::to_string(i + 1) + " listed twice in partition");
    }
  }
  for (int i = 0; i < node_count; ++i)
    if (!seen[i])
      throw PartitionError("node " + std::to_string(i + 1) + " missing from partition");
}

AgentPartition AgentPartition::from_leaders(int node_count, std::vector<int> leaders) {
  std::vector<int> followers;
  for (int i = 0; i < node_count; ++i)
    if (std::find(leaders.begin(), leaders.end(), i) == leaders.end()) followers.push_back(i);
  return AgentPartition(node_count, std::move(leaders), std::move(followers));
}

Eigen::VectorXd Relabeling::to_canonical(const Eigen::VectorXd& stacked, int d) const {
  Eigen::VectorXd out(stacked.size());
  for (std::size_t old = 0; old < new_of_old.size(); ++old)
    out.segment(new_of_old[old] * d, d) = stacked.segment(static_cast<int>(old) * d, d);
  return out;
}

Eigen::VectorXd Relabeling::to_original(const Eigen::VectorXd& stacked, int d) const {
  Eigen::VectorXd out(stacked.size());
  for (std::size_t nw = 0; nw < old_of_new.size(); ++nw)
    out.segment(old_of_new[nw] * d, d) = stacked.segment(static_cast<int>(nw) * d, d);
  return out;
}

Relabeling canonicalize_partition(const NetworkGraph& g, const AgentPartition& part,
                                  int min_leaders) {
  if (part.leader_count() < min_leaders)
    throw PartitionError("at least " + std::to_string(min_leaders) + " leaders required, got " +
                         std::to_string(part.leader_count()));
  if (part.leader_count() + part.follower_count() != g.node_count())
    throw PartitionError("partition size does not match the graph");

  std::vector<int> old_of_new;
  old_of_new.insert(old_of_new.end(), part.leaders().begin(), part.leaders().end());
  old_of_new.insert(old_of_new.end(), part.followers().begin(), part.followers().end());
  std::vector<int> new_of_old(g.node_count());
  for (int nw = 0; nw < g.node_count(); ++nw) new_of_old[old_of_new[nw]] = nw;

  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) edges.emplace_back(new_of_old[e.head], new_of_old[e.tail]);

  return Relabeling{NetworkGraph(g.node_count(), edges), std::move(new_of_old),
                    std::move(old_of_new), part.leader_count()};
}

}  // namespace bearing
