#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mre/metric.hpp"

namespace mre {

/// Sample Pearson r. Throws DomainError on length mismatch, fewer than two
/// points, or a constant sequence (undefined, never coerced to 0).
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Pearson over average ranks; ties get the mean of their rank range.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& x);

struct CorrelationRow {
  std::optional<double> sre_pearson;
  std::optional<double> mre_pearson;
  std::optional<double> sre_spearman;
  std::optional<double> mre_spearman;
  std::size_t n = 0;
};

struct CorrelationReport {
  std::map<MetricId, CorrelationRow> rows;
};

}  // namespace mre
