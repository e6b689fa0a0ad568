#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mre/embedding.hpp"
#include "mre/evaluation_record.hpp"
#include "mre/metric.hpp"
#include "mre/stats.hpp"

namespace mre {

struct Provenance {
  std::string generator;  // model label, e.g. "text-davinci-003"
  std::string mode;       // "zero_shot" | "few_shot"
  double temperature = 0.0;
};

// The gold reference plus its augmented paraphrases. Paraphrases never
// duplicate each other or the original (case-insensitive after
// normalization).
struct ReferenceSet {
  std::string original;
  std::vector<std::string> paraphrases;
  Provenance provenance;

  // Appends unless it normalizes to the original or an existing entry.
  // Returns whether the paraphrase was kept.
  bool add_paraphrase(const std::string& text);
};

// candidate, reference -> score. All registered functions normalize their
// own inputs.
using MetricFn = std::function<double(const std::string&, const std::string&)>;

class MetricRegistry {
 public:
  void add(const MetricId& id, MetricFn fn);
  double score(const MetricId& id, const std::string& candidate,
               const std::string& reference) const;
  bool has(const MetricId& id) const;
  std::vector<MetricId> metrics() const;

 private:
  std::map<MetricId, MetricFn> fns_;
};

struct BuiltinMetricOptions {
  // Provider backing bertscore/moverscore; those metrics are omitted from
  // the registry when absent.
  EmbeddingProvider* provider = nullptr;
  // Remote learned scorer registered as "external:<label>".
  std::string scorer_endpoint;
  std::string scorer_label = "scorer";
  bool bleu_smoothing = false;
  bool meteor_stemming = false;
};

MetricRegistry make_builtin_registry(const BuiltinMetricOptions& opts = {});

/// SRE: the metric against the single gold reference.
MetricScore score_single(const MetricRegistry& registry, const MetricId& metric,
                         const std::string& candidate,
                         const std::string& reference);

struct MultiScore {
  MetricScore score;
  int best_reference_index = 0;  // 0 = original, i >= 1 = paraphrase i-1
};

/// MRE: max over the original and every paraphrase; ties break toward the
/// smallest index, so MRE >= SRE always holds.
MultiScore score_multi(const MetricRegistry& registry, const MetricId& metric,
                       const std::string& candidate, const ReferenceSet& refs);

struct DeltaRow {
  std::optional<double> accepted_mean;  // human score exactly 1
  std::optional<double> rejected_mean;  // human score exactly 0
  std::size_t accepted_n = 0;
  std::size_t rejected_n = 0;
};

/// Mean (mre - sre) per metric for the accepted and rejected groups.
/// Fractional human scores are excluded.
std::map<MetricId, DeltaRow> delta_report(
    const std::vector<EvaluationRecord>& records);

struct SweepInput {
  std::string context_id;
  std::string candidate;
  double human_score = 0.0;
  ReferenceSet refs;
};

struct SweepPoint {
  std::size_t size = 0;       // requested paraphrase count
  std::size_t effective = 0;  // after truncation to what exists
  double pearson = 0.0;
  double spearman = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<std::string> warnings;
};

/// MRE correlation against human scores using only the first k paraphrases,
/// for each k in sizes. Sizes beyond the shortest reference set are
/// truncated with a warning.
SweepResult n_sweep(const MetricRegistry& registry, const MetricId& metric,
                    const std::vector<SweepInput>& inputs,
                    const std::vector<std::size_t>& sizes);

/// Table-2-shaped report: SRE and MRE correlations per metric against the
/// human scores. Undefined cells are absent, not zero.
CorrelationReport correlation_report(const std::vector<EvaluationRecord>& records,
                                     const std::vector<MetricId>& metrics);

/// Canonical report ordering: by context_id, then candidate text.
void sort_records(std::vector<EvaluationRecord>& records);

}  // namespace mre
