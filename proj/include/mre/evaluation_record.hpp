#pragma once

#include <map>
#include <string>

#include "mre/metric.hpp"

namespace mre {

struct PerMetricScores {
  double sre = 0.0;
  double mre = 0.0;
  int best_reference_index = 0;  // 0 is the original reference
};

// One candidate question scored under both modes, joined to its human score.
struct EvaluationRecord {
  std::string context_id;
  std::string candidate;
  double human_score = 0.0;
  std::map<MetricId, PerMetricScores> scores;
};

}  // namespace mre
