#include "mre/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "mre/error.hpp"

namespace mre {

namespace {

constexpr double kMarginalTol = 1e-9;

struct Cell {
  std::size_t row, col;
  double flow;
};

// Spanning-tree basis over the bipartite node set {rows} U {cols}.
// Nodes 0..n-1 are rows, n..n+m-1 are columns.
class Basis {
 public:
  Basis(std::size_t n, std::size_t m) : n_(n), m_(m) {}

  void add(std::size_t r, std::size_t c, double flow) {
    cells_.push_back({r, c, flow});
  }

  void remove(std::size_t idx) { cells_.erase(cells_.begin() + idx); }

  std::vector<Cell>& cells() { return cells_; }
  const std::vector<Cell>& cells() const { return cells_; }

  // u_r + v_c = cost[r][c] on every basic cell, anchored at u_0 = 0.
  void potentials(const std::vector<std::vector<double>>& costs,
                  std::vector<double>& u, std::vector<double>& v) const {
    u.assign(n_, 0.0);
    v.assign(m_, 0.0);
    std::vector<bool> known_u(n_, false), known_v(m_, false);
    known_u[0] = true;
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& cell : cells_) {
        if (known_u[cell.row] && !known_v[cell.col]) {
          v[cell.col] = costs[cell.row][cell.col] - u[cell.row];
          known_v[cell.col] = true;
          progress = true;
        } else if (known_v[cell.col] && !known_u[cell.row]) {
          u[cell.row] = costs[cell.row][cell.col] - v[cell.col];
          known_u[cell.row] = true;
          progress = true;
        }
      }
    }
  }

  // Unique tree path from row node `r` to column node `c`, as indices into
  // cells(). BFS over basic edges.
  std::vector<std::size_t> path(std::size_t r, std::size_t c) const {
    std::size_t nodes = n_ + m_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nodes);
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      std::size_t a = cells_[k].row;
      std::size_t b = n_ + cells_[k].col;
      adj[a].push_back({b, k});
      adj[b].push_back({a, k});
    }
    std::vector<std::size_t> prev_node(nodes, SIZE_MAX), prev_edge(nodes, SIZE_MAX);
    std::vector<bool> seen(nodes, false);
    std::deque<std::size_t> queue{r};
    seen[r] = true;
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      if (cur == n_ + c) break;
      for (auto [next, edge] : adj[cur]) {
        if (!seen[next]) {
          seen[next] = true;
          prev_node[next] = cur;
          prev_edge[next] = edge;
          queue.push_back(next);
        }
      }
    }
    std::vector<std::size_t> edges;
    for (std::size_t cur = n_ + c; cur != r; cur = prev_node[cur]) {
      edges.push_back(prev_edge[cur]);
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
  }

 private:
  std::size_t n_, m_;
  std::vector<Cell> cells_;
};

void validate(const TransportProblem& p, std::size_t max_cells) {
  std::size_t n = p.supply.size(), m = p.demand.size();
  if (n == 0 || m == 0) throw DomainError("transport: empty marginals");
  if (p.costs.size() != n) throw DomainError("transport: cost row count mismatch");
  for (const auto& row : p.costs) {
    if (row.size() != m) throw DomainError("transport: cost column count mismatch");
    for (double c : row) {
      if (!std::isfinite(c) || c < 0.0) {
        throw DomainError("transport: costs must be finite and non-negative");
      }
    }
  }
  if (n * m > max_cells) {
    throw CapacityError("transport: instance has " + std::to_string(n * m) +
                        " cells, bound is " + std::to_string(max_cells));
  }
  double s = std::accumulate(p.supply.begin(), p.supply.end(), 0.0);
  double d = std::accumulate(p.demand.begin(), p.demand.end(), 0.0);
  for (double w : p.supply) {
    if (w < 0.0) throw DomainError("transport: negative supply");
  }
  for (double w : p.demand) {
    if (w < 0.0) throw DomainError("transport: negative demand");
  }
  if (std::abs(s - 1.0) > kMarginalTol || std::abs(d - 1.0) > kMarginalTol) {
    throw DomainError("transport: marginals must each sum to 1");
  }
}

}  // namespace

TransportSolution solve_transport(const TransportProblem& problem,
                                  std::size_t max_cells) {
  validate(problem, max_cells);
  std::size_t n = problem.supply.size(), m = problem.demand.size();

  // Northwest-corner start; moves one index per step so the basis always
  // has exactly n+m-1 cells, zero allocations included when degenerate.
  Basis basis(n, m);
  {
    std::vector<double> s = problem.supply, d = problem.demand;
    std::size_t i = 0, j = 0;
    while (true) {
      double q = std::min(s[i], d[j]);
      basis.add(i, j, q);
      s[i] -= q;
      d[j] -= q;
      if (i + 1 == n && j + 1 == m) break;
      if (j + 1 == m || (i + 1 < n && s[i] <= d[j])) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  double cost_scale = 1.0;
  for (const auto& row : problem.costs) {
    for (double c : row) cost_scale = std::max(cost_scale, std::abs(c));
  }
  const double eps = 1e-12 * cost_scale;

  std::vector<double> u, v;
  const std::size_t max_iter = 1000 * (n + m) * (n + m) + 1000;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    basis.potentials(problem.costs, u, v);

    // Bland's rule: smallest-index entering cell with negative reduced cost.
    std::vector<bool> is_basic(n * m, false);
    for (const auto& cell : basis.cells()) is_basic[cell.row * m + cell.col] = true;
    std::size_t enter_r = SIZE_MAX, enter_c = SIZE_MAX;
    for (std::size_t r = 0; r < n && enter_r == SIZE_MAX; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        if (!is_basic[r * m + c] &&
            problem.costs[r][c] - u[r] - v[c] < -eps) {
          enter_r = r;
          enter_c = c;
          break;
        }
      }
    }
    if (enter_r == SIZE_MAX) break;  // optimal

    // Cycle = entering cell + tree path; signs alternate starting at +.
    auto path = basis.path(enter_r, enter_c);
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = SIZE_MAX;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0) {  // minus position
        double flow = basis.cells()[path[k]].flow;
        if (flow < theta - 1e-18 ||
            (std::abs(flow - theta) <= 1e-18 && path[k] < leave)) {
          theta = flow;
          leave = path[k];
        }
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      basis.cells()[path[k]].flow += (k % 2 == 0) ? -theta : theta;
    }
    basis.add(enter_r, enter_c, theta);
    basis.remove(leave);
  }

  TransportSolution sol;
  sol.plan.assign(n, std::vector<double>(m, 0.0));
  for (const auto& cell : basis.cells()) {
    sol.plan[cell.row][cell.col] = std::max(cell.flow, 0.0);
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      sol.cost += sol.plan[r][c] * problem.costs[r][c];
    }
  }
  return sol;
}

}  // namespace mre
