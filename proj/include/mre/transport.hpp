#pragma once

#include <cstddef>
#include <vector>

namespace mre {

// Balanced transportation instance: both marginals sum to 1.
struct TransportProblem {
  std::vector<std::vector<double>> costs;  // n x m, finite, >= 0
  std::vector<double> supply;              // length n
  std::vector<double> demand;              // length m
};

struct TransportSolution {
  std::vector<std::vector<double>> plan;  // feasible, cost-minimal
  double cost = 0.0;
};

inline constexpr std::size_t kDefaultTransportCellBound = 4096;

/// Exact minimum-cost transport via the transportation simplex.
/// Throws DomainError on infeasible marginals and CapacityError when
/// n*m exceeds the cell bound.
TransportSolution solve_transport(
    const TransportProblem& problem,
    std::size_t max_cells = kDefaultTransportCellBound);

}  // namespace mre
