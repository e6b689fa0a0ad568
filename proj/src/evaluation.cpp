#include "mre/evaluation.hpp"

#include <algorithm>

#include "mre/embedding_metrics.hpp"
#include "mre/error.hpp"
#include "mre/lexical_metrics.hpp"
#include "mre/textnorm.hpp"

namespace mre {

bool ReferenceSet::add_paraphrase(const std::string& text) {
  std::string key = normalized_key(text);
  if (key.empty()) return false;
  if (key == normalized_key(original)) return false;
  for (const auto& existing : paraphrases) {
    if (normalized_key(existing) == key) return false;
  }
  paraphrases.push_back(text);
  return true;
}

void MetricRegistry::add(const MetricId& id, MetricFn fn) {
  fns_[id] = std::move(fn);
}

bool MetricRegistry::has(const MetricId& id) const { return fns_.count(id) > 0; }

double MetricRegistry::score(const MetricId& id, const std::string& candidate,
                             const std::string& reference) const {
  auto it = fns_.find(id);
  if (it == fns_.end()) {
    throw ConfigError("unknown or unconfigured metric: " + id.name);
  }
  return it->second(candidate, reference);
}

std::vector<MetricId> MetricRegistry::metrics() const {
  std::vector<MetricId> out;
  for (const auto& [id, fn] : fns_) out.push_back(id);
  return out;
}

MetricRegistry make_builtin_registry(const BuiltinMetricOptions& opts) {
  MetricRegistry registry;
  BleuOptions bleu_opts{opts.bleu_smoothing};
  registry.add({"bleu4"}, [bleu_opts](const std::string& c, const std::string& r) {
    return bleu4(normalize(c), normalize(r), bleu_opts);
  });
  registry.add({"rouge_l"}, [](const std::string& c, const std::string& r) {
    return rouge_l(normalize(c), normalize(r));
  });
  MeteorOptions meteor_opts;
  meteor_opts.stemming = opts.meteor_stemming;
  registry.add({"meteor"}, [meteor_opts](const std::string& c, const std::string& r) {
    return meteor(normalize(c), normalize(r), meteor_opts);
  });
  if (opts.provider) {
    EmbeddingProvider* provider = opts.provider;
    registry.add({"bertscore"}, [provider](const std::string& c, const std::string& r) {
      return bertscore(normalize(c), normalize(r), *provider).f1;
    });
    registry.add({"moverscore"}, [provider](const std::string& c, const std::string& r) {
      return word_mover_score(normalize(c), normalize(r), *provider);
    });
  }
  if (!opts.scorer_endpoint.empty()) {
    std::string endpoint = opts.scorer_endpoint;
    registry.add({"external:" + opts.scorer_label},
                 [endpoint](const std::string& c, const std::string& r) {
                   return external_score(endpoint, c, r);
                 });
  }
  return registry;
}

MetricScore score_single(const MetricRegistry& registry, const MetricId& metric,
                         const std::string& candidate,
                         const std::string& reference) {
  if (candidate.empty() || reference.empty()) {
    throw DomainError("score_single: empty candidate or reference");
  }
  return {metric, registry.score(metric, candidate, reference)};
}

MultiScore score_multi(const MetricRegistry& registry, const MetricId& metric,
                       const std::string& candidate, const ReferenceSet& refs) {
  MultiScore best;
  best.score = score_single(registry, metric, candidate, refs.original);
  best.best_reference_index = 0;
  for (std::size_t i = 0; i < refs.paraphrases.size(); ++i) {
    double v = registry.score(metric, candidate, refs.paraphrases[i]);
    if (v > best.score.value) {
      best.score.value = v;
      best.best_reference_index = static_cast<int>(i) + 1;
    }
  }
  return best;
}

std::map<MetricId, DeltaRow> delta_report(
    const std::vector<EvaluationRecord>& records) {
  std::map<MetricId, DeltaRow> report;
  std::map<MetricId, std::pair<double, double>> sums;  // accepted, rejected
  for (const auto& rec : records) {
    bool accepted = rec.human_score == 1.0;
    bool rejected = rec.human_score == 0.0;
    if (!accepted && !rejected) continue;  // Table-3 groups are binary
    for (const auto& [metric, s] : rec.scores) {
      auto& row = report[metric];
      auto& [acc_sum, rej_sum] = sums[metric];
      double delta = s.mre - s.sre;
      if (accepted) {
        acc_sum += delta;
        row.accepted_n++;
      } else {
        rej_sum += delta;
        row.rejected_n++;
      }
    }
  }
  for (auto& [metric, row] : report) {
    const auto& [acc_sum, rej_sum] = sums[metric];
    if (row.accepted_n > 0) row.accepted_mean = acc_sum / row.accepted_n;
    if (row.rejected_n > 0) row.rejected_mean = rej_sum / row.rejected_n;
  }
  return report;
}

SweepResult n_sweep(const MetricRegistry& registry, const MetricId& metric,
                    const std::vector<SweepInput>& inputs,
                    const std::vector<std::size_t>& sizes) {
  if (inputs.size() < 2) {
    throw DomainError("n_sweep: need at least 2 records");
  }
  std::vector<double> human;
  human.reserve(inputs.size());
  for (const auto& in : inputs) human.push_back(in.human_score);
  {
    bool distinct = false;
    for (double h : human) distinct |= (h != human[0]);
    if (!distinct) {
      throw DomainError("n_sweep: correlation undefined, all human scores equal");
    }
  }

  // Per-reference scores computed once; the per-k max is a prefix max.
  std::vector<double> base(inputs.size());
  std::vector<std::vector<double>> para_scores(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    base[i] = registry.score(metric, inputs[i].candidate, inputs[i].refs.original);
    for (const auto& p : inputs[i].refs.paraphrases) {
      para_scores[i].push_back(registry.score(metric, inputs[i].candidate, p));
    }
  }

  SweepResult result;
  for (std::size_t k : sizes) {
    std::size_t effective = k;
    for (const auto& scores : para_scores) {
      effective = std::min(effective, scores.size());
    }
    if (effective < k) {
      result.warnings.push_back(
          "size " + std::to_string(k) + " truncated to " +
          std::to_string(effective) + " (shortest reference set)");
    }
    std::vector<double> mre(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      double v = base[i];
      for (std::size_t j = 0; j < effective; ++j) {
        v = std::max(v, para_scores[i][j]);
      }
      mre[i] = v;
    }
    SweepPoint point;
    point.size = k;
    point.effective = effective;
    point.pearson = pearson(mre, human);
    point.spearman = spearman(mre, human);
    result.points.push_back(point);
  }
  return result;
}

CorrelationReport correlation_report(const std::vector<EvaluationRecord>& records,
                                     const std::vector<MetricId>& metrics) {
  if (records.size() < 2) {
    throw DomainError("correlation_report: need at least 2 records");
  }
  std::vector<double> human;
  for (const auto& r : records) human.push_back(r.human_score);

  CorrelationReport report;
  for (const auto& metric : metrics) {
    CorrelationRow row;
    std::vector<double> sre, mre;
    for (const auto& r : records) {
      auto it = r.scores.find(metric);
      if (it == r.scores.end()) continue;
      sre.push_back(it->second.sre);
      mre.push_back(it->second.mre);
    }
    row.n = sre.size();
    if (sre.size() == records.size() && sre.size() >= 2) {
      // Undefined cells (constant input) stay absent; the run continues.
      try {
        row.sre_pearson = pearson(sre, human);
      } catch (const DomainError&) {}
      try {
        row.mre_pearson = pearson(mre, human);
      } catch (const DomainError&) {}
      try {
        row.sre_spearman = spearman(sre, human);
      } catch (const DomainError&) {}
      try {
        row.mre_spearman = spearman(mre, human);
      } catch (const DomainError&) {}
    }
    report.rows[metric] = row;
  }
  return report;
}

void sort_records(std::vector<EvaluationRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const EvaluationRecord& a, const EvaluationRecord& b) {
              if (a.context_id != b.context_id) return a.context_id < b.context_id;
              return a.candidate < b.candidate;
            });
}

}  // namespace mre
