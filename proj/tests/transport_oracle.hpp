#pragma once

// Test-only brute force for small transportation instances: enumerate every
// spanning tree of the complete bipartite support, solve the unique flow on
// the tree, keep the cheapest non-negative one. Independent of the
// production solver.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "mre/transport.hpp"

namespace mre::testing {

inline std::optional<double> tree_cost(const TransportProblem& p,
                                       const std::vector<std::pair<int, int>>& edges) {
  int n = static_cast<int>(p.supply.size());
  int m = static_cast<int>(p.demand.size());
  int nodes = n + m;
  std::vector<double> balance(nodes);
  for (int i = 0; i < n; ++i) balance[i] = p.supply[i];
  for (int j = 0; j < m; ++j) balance[n + j] = p.demand[j];

  std::vector<int> degree(nodes, 0);
  std::vector<std::vector<int>> incident(nodes);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    int a = edges[e].first, b = n + edges[e].second;
    degree[a]++;
    degree[b]++;
    incident[a].push_back(e);
    incident[b].push_back(e);
  }
  for (int v = 0; v < nodes; ++v) {
    if (degree[v] == 0) return std::nullopt;  // not spanning
  }

  std::vector<bool> edge_done(edges.size(), false);
  std::vector<double> flow(edges.size(), 0.0);
  std::vector<bool> node_done(nodes, false);
  for (int round = 0; round < nodes - 1; ++round) {
    int leaf = -1, via = -1;
    for (int v = 0; v < nodes && leaf < 0; ++v) {
      if (node_done[v]) continue;
      int live = 0, last = -1;
      for (int e : incident[v]) {
        if (!edge_done[e]) {
          ++live;
          last = e;
        }
      }
      if (live == 1) {
        leaf = v;
        via = last;
      }
    }
    if (leaf < 0) return std::nullopt;  // cycle: not a tree
    flow[via] = balance[leaf];
    if (flow[via] < -1e-9) return std::nullopt;  // infeasible on this tree
    int other = (edges[via].first == leaf) ? n + edges[via].second
                                           : edges[via].first;
    balance[other] -= balance[leaf];
    balance[leaf] = 0.0;
    edge_done[via] = true;
    node_done[leaf] = true;
  }

  double cost = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    cost += std::max(flow[e], 0.0) * p.costs[edges[e].first][edges[e].second];
  }
  return cost;
}

inline double brute_force_transport_cost(const TransportProblem& p) {
  int n = static_cast<int>(p.supply.size());
  int m = static_cast<int>(p.demand.size());
  int cells = n * m;
  int basis_size = n + m - 1;

  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) all.emplace_back(i, j);
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(basis_size);
  // lexicographic combinations of cell indices
  for (int i = 0; i < basis_size; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::pair<int, int>> edges;
    for (int idx : pick) edges.push_back(all[idx]);
    if (auto cost = tree_cost(p, edges)) best = std::min(best, *cost);

    int pos = basis_size - 1;
    while (pos >= 0 && pick[pos] == cells - basis_size + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int k = pos + 1; k < basis_size; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

}  // namespace mre::testing
