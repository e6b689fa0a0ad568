#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mre/augment.hpp"
#include "mre/corpus.hpp"
#include "mre/embedding.hpp"
#include "mre/error.hpp"
#include "mre/evaluation.hpp"
#include "mre/io.hpp"
#include "mre/textnorm.hpp"

namespace {

using namespace mre;

std::vector<MetricId> parse_metric_list(const std::string& csv) {
  std::vector<MetricId> metrics;
  std::stringstream ss(csv);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (!name.empty()) metrics.push_back(MetricId::parse(name));
  }
  if (metrics.empty()) throw ConfigError("empty metric list");
  return metrics;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) sizes.push_back(std::stoul(item));
  }
  if (sizes.empty()) throw ConfigError("empty size list");
  return sizes;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
}

// First accepted question per context, in deterministic context order.
std::vector<std::pair<std::string, std::string>> primary_references(
    const CorpusSplit& split) {
  std::vector<std::pair<std::string, std::string>> refs;
  for (const auto& [ctx, questions] : split.references) {
    refs.emplace_back(ctx, questions.front());
  }
  return refs;
}

int run_augment(const std::string& dataset, const std::string& out,
                GeneratorConfig config, const std::string& replay_dir,
                const std::string& record_dir, const std::string& cache_path,
                std::size_t jobs) {
  auto samples = load_dataset(dataset);
  auto split = split_corpus(samples);
  auto refs = primary_references(split);
  if (!split.skipped.empty()) {
    std::cerr << "note: " << split.skipped.size()
              << " sample(s) skipped (context has no accepted question)\n";
  }

  std::unique_ptr<AugmentationCache> cache;
  if (!cache_path.empty()) cache = std::make_unique<AugmentationCache>(cache_path);
  CompletionClient client = replay_dir.empty()
                                ? make_live_client(config, record_dir)
                                : make_replay_client(replay_dir);

  std::vector<std::string> questions;
  for (const auto& [ctx, q] : refs) questions.push_back(q);
  auto results = augment_many(questions, config, cache.get(), client, jobs);

  std::vector<ReferenceSet> sets;
  std::size_t shortfalls = 0;
  for (const auto& r : results) {
    sets.push_back(r.refs);
    if (r.shortfall) ++shortfalls;
  }
  write_reference_sets(out, sets);
  if (shortfalls) {
    std::cerr << "warning: " << shortfalls << " reference(s) got fewer than "
              << config.n << " paraphrases\n";
  }
  std::cout << "augmented " << sets.size() << " reference(s) -> " << out << "\n";
  return 0;
}

int run_score(const std::string& dataset, const std::string& refs_path,
              const std::string& out, const std::string& metrics_csv,
              const std::string& embeddings, const std::string& scorer,
              std::size_t jobs) {
  auto samples = load_dataset(dataset);
  auto split = split_corpus(samples);
  if (!split.skipped.empty()) {
    std::cerr << "note: " << split.skipped.size()
              << " sample(s) skipped (context has no accepted question)\n";
  }
  auto ref_sets = load_reference_sets(refs_path);

  BuiltinMetricOptions opts;
  std::unique_ptr<EmbeddingProvider> provider;
  if (!embeddings.empty()) {
    std::vector<std::string> vocab_texts;
    for (const auto& s : samples) vocab_texts.push_back(s.question);
    for (const auto& [key, rs] : ref_sets) {
      vocab_texts.push_back(rs.original);
      for (const auto& p : rs.paraphrases) vocab_texts.push_back(p);
    }
    provider = make_embedding_provider(embeddings, vocab_texts);
    opts.provider = provider.get();
  }
  if (!scorer.empty()) opts.scorer_endpoint = scorer;
  MetricRegistry registry = make_builtin_registry(opts);

  std::string csv = metrics_csv;
  if (csv.empty()) {
    csv = "bleu4,rouge_l,meteor";
    if (opts.provider) csv += ",bertscore,moverscore";
    if (!scorer.empty()) csv += ",external:scorer";
  }
  auto metrics = parse_metric_list(csv);
  for (const auto& m : metrics) {
    if (!registry.has(m)) {
      throw ConfigError("metric " + m.name +
                        " needs a provider/endpoint that was not supplied");
    }
  }

  // Per-candidate reference set: the context's first accepted question,
  // remaining accepted questions, then the augmented paraphrases.
  std::vector<EvaluationRecord> records(split.candidates.size());
  std::vector<std::exception_ptr> errors(split.candidates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= split.candidates.size()) return;
      const auto& cand = split.candidates[i];
      try {
        const auto& gold = split.references.at(cand.context_id);
        ReferenceSet refs;
        refs.original = gold.front();
        auto it = ref_sets.find(normalized_key(gold.front()));
        if (it != ref_sets.end()) refs.provenance = it->second.provenance;
        for (std::size_t g = 1; g < gold.size(); ++g) refs.add_paraphrase(gold[g]);
        if (it != ref_sets.end()) {
          for (const auto& p : it->second.paraphrases) refs.add_paraphrase(p);
        }

        EvaluationRecord rec;
        rec.context_id = cand.context_id;
        rec.candidate = cand.question;
        rec.human_score = cand.human_score;
        for (const auto& metric : metrics) {
          PerMetricScores pm;
          pm.sre = score_single(registry, metric, cand.question, refs.original).value;
          auto multi = score_multi(registry, metric, cand.question, refs);
          pm.mre = multi.score.value;
          pm.best_reference_index = multi.best_reference_index;
          rec.scores[metric] = pm;
        }
        records[i] = std::move(rec);
      } catch (const std::exception& e) {
        errors[i] = std::make_exception_ptr(
            Error("context " + cand.context_id + ": " + e.what()));
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < std::max<std::size_t>(1, jobs); ++t) {
    threads.emplace_back(worker);
  }
  for (auto& t : threads) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  sort_records(records);
  write_scored_records(out, records);
  std::cout << "scored " << records.size() << " candidate(s) -> " << out << "\n";
  return 0;
}

int run_correlate(const std::string& scored, const std::string& out_prefix) {
  auto records = read_scored_records(scored);
  sort_records(records);

  std::set<MetricId> metric_set;
  for (const auto& r : records) {
    for (const auto& [m, s] : r.scores) metric_set.insert(m);
  }
  std::vector<MetricId> metrics(metric_set.begin(), metric_set.end());

  auto report = correlation_report(records, metrics);
  auto deltas = delta_report(records);
  write_file(out_prefix + ".correlation.json", correlation_report_json(report));
  write_file(out_prefix + ".correlation.txt", format_correlation_table(report));
  write_file(out_prefix + ".delta.json", delta_report_json(deltas));
  write_file(out_prefix + ".delta.txt", format_delta_table(deltas));
  std::cout << format_correlation_table(report);
  return 0;
}

int run_sweep(const std::string& dataset, const std::string& refs_path,
              const std::string& metric_name, const std::string& sizes_csv,
              const std::string& embeddings, const std::string& scorer,
              const std::string& out_prefix) {
  auto samples = load_dataset(dataset);
  auto split = split_corpus(samples);
  auto ref_sets = load_reference_sets(refs_path);
  MetricId metric = MetricId::parse(metric_name);

  BuiltinMetricOptions opts;
  std::unique_ptr<EmbeddingProvider> provider;
  if (!embeddings.empty()) {
    std::vector<std::string> vocab_texts;
    for (const auto& s : samples) vocab_texts.push_back(s.question);
    for (const auto& [key, rs] : ref_sets) {
      vocab_texts.push_back(rs.original);
      for (const auto& p : rs.paraphrases) vocab_texts.push_back(p);
    }
    provider = make_embedding_provider(embeddings, vocab_texts);
    opts.provider = provider.get();
  }
  if (!scorer.empty()) opts.scorer_endpoint = scorer;
  MetricRegistry registry = make_builtin_registry(opts);
  if (!registry.has(metric)) {
    throw ConfigError("metric " + metric.name +
                      " needs a provider/endpoint that was not supplied");
  }

  std::vector<SweepInput> inputs;
  for (const auto& cand : split.candidates) {
    const auto& gold = split.references.at(cand.context_id);
    SweepInput in;
    in.context_id = cand.context_id;
    in.candidate = cand.question;
    in.human_score = cand.human_score;
    in.refs.original = gold.front();
    auto it = ref_sets.find(normalized_key(gold.front()));
    if (it != ref_sets.end()) {
      for (const auto& p : it->second.paraphrases) in.refs.add_paraphrase(p);
    }
    inputs.push_back(std::move(in));
  }
  std::sort(inputs.begin(), inputs.end(),
            [](const SweepInput& a, const SweepInput& b) {
              if (a.context_id != b.context_id) return a.context_id < b.context_id;
              return a.candidate < b.candidate;
            });

  auto result = n_sweep(registry, metric, inputs, parse_sizes(sizes_csv));
  write_file(out_prefix + ".sweep.json", sweep_json(metric, result));
  write_file(out_prefix + ".sweep.txt", format_sweep_table(metric, result));
  std::cout << format_sweep_table(metric, result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-reference question-generation evaluation"};
  app.require_subcommand(1);

  std::string dataset, refs, out, out_prefix, scored;
  std::string metrics_csv, embeddings, scorer;
  std::string replay_dir, record_dir, cache_path;
  std::string mode = "zero", metric_name = "rouge_l";
  std::string sizes_csv = "1,2,5,10,20";
  std::size_t jobs = 1;
  mre::GeneratorConfig gen;

  auto* aug = app.add_subcommand("augment", "Paraphrase reference questions");
  aug->add_option("--dataset", dataset)->required();
  aug->add_option("--out", out)->required();
  aug->add_option("--model", gen.model);
  aug->add_option("--mode", mode)->check(CLI::IsMember({"zero", "few"}));
  aug->add_option("--temperature", gen.temperature);
  aug->add_option("--n", gen.n);
  aug->add_option("--endpoint", gen.endpoint);
  aug->add_option("--replay", replay_dir, "Read completions from fixtures");
  aug->add_option("--record", record_dir, "Record live completions here");
  aug->add_option("--cache", cache_path);
  aug->add_option("--jobs", jobs);

  auto* sc = app.add_subcommand("score", "Score candidates (SRE + MRE)");
  sc->add_option("--dataset", dataset)->required();
  sc->add_option("--refs", refs)->required();
  sc->add_option("--out", out)->required();
  sc->add_option("--metrics", metrics_csv,
                 "Comma list: bleu4,rouge_l,meteor,bertscore,moverscore");
  sc->add_option("--embeddings", embeddings,
                 "onehot, a JSONL file, or an http endpoint");
  sc->add_option("--scorer", scorer, "External learned-scorer endpoint");
  sc->add_option("--jobs", jobs);

  auto* corr = app.add_subcommand("correlate", "Correlation + delta reports");
  corr->add_option("--scored", scored)->required();
  corr->add_option("--out", out_prefix, "Output path prefix")->required();

  auto* sweep = app.add_subcommand("sweep", "Correlation vs. paraphrase count");
  sweep->add_option("--dataset", dataset)->required();
  sweep->add_option("--refs", refs)->required();
  sweep->add_option("--metric", metric_name);
  sweep->add_option("--sizes", sizes_csv);
  sweep->add_option("--embeddings", embeddings);
  sweep->add_option("--scorer", scorer);
  sweep->add_option("--out", out_prefix, "Output path prefix")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (aug->parsed()) {
      gen.mode = mre::parse_prompt_mode(mode);
      return run_augment(dataset, out, gen, replay_dir, record_dir, cache_path,
                         jobs);
    }
    if (sc->parsed()) {
      return run_score(dataset, refs, out, metrics_csv, embeddings, scorer, jobs);
    }
    if (corr->parsed()) return run_correlate(scored, out_prefix);
    if (sweep->parsed()) {
      return run_sweep(dataset, refs, metric_name, sizes_csv, embeddings, scorer,
                       out_prefix);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
