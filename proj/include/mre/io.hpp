#pragma once

#include <map>
#include <string>
#include <vector>

#include "mre/evaluation.hpp"
#include "mre/stats.hpp"

namespace mre {

/// Scored-records file: one JSON object per line with context_id,
/// candidate, human_score, and per-metric {sre, mre, best_reference_index}.
void write_scored_records(const std::string& path,
                          const std::vector<EvaluationRecord>& records);
std::vector<EvaluationRecord> read_scored_records(const std::string& path);

/// Augmented-references file (same layout the cache appends); keyed by the
/// normalized source question.
std::map<std::string, ReferenceSet> load_reference_sets(const std::string& path);
void write_reference_sets(const std::string& path,
                          const std::vector<ReferenceSet>& sets);

std::string correlation_report_json(const CorrelationReport& report);
std::string format_correlation_table(const CorrelationReport& report);

std::string delta_report_json(const std::map<MetricId, DeltaRow>& report);
std::string format_delta_table(const std::map<MetricId, DeltaRow>& report);

std::string sweep_json(const MetricId& metric, const SweepResult& result);
std::string format_sweep_table(const MetricId& metric, const SweepResult& result);

}  // namespace mre
