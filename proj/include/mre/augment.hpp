#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mre/evaluation.hpp"

namespace mre {

enum class PromptMode { kZeroShot, kFewShot };

std::string to_string(PromptMode mode);
PromptMode parse_prompt_mode(const std::string& s);  // "zero" | "few" accepted

struct GeneratorConfig {
  std::string model = "text-davinci-003";
  PromptMode mode = PromptMode::kZeroShot;
  double temperature = 0.5;
  int n = 20;
  std::string endpoint;                   // chat-completions URL
  std::string api_key_env = "MRE_API_KEY";
  int max_attempts = 3;
  double initial_backoff_seconds = 1.0;
  double requests_per_second = 2.0;
  int timeout_seconds = 60;
};

/// The paraphrasing instruction. Zero-shot is the single-line instruction
/// plus the question; few-shot prepends the three fixed demonstration
/// blocks and ends with "Sentence: " and the target question.
std::string build_prompt(const std::string& question, PromptMode mode, int n);

/// Pulls numbered-list items out of a completion: leading integer plus
/// separator, trimmed, empties dropped, case-insensitive dedup after
/// normalization, first occurrence wins.
std::vector<std::string> parse_paraphrases(const std::string& completion);

/// Stable digest of (model, mode, temperature, n, normalized question,
/// prompt-template version). Identical inputs give identical keys across
/// runs and platforms.
std::string cache_key(const GeneratorConfig& config, const std::string& question);

// Completion fetcher: (prompt, cache key) -> raw completion text. The key
// lets replay clients address recorded fixtures.
using CompletionClient = std::function<std::string(const std::string&,
                                                   const std::string&)>;

/// Live chat-completions client with exponential backoff, jitter, and a
/// request-rate token bucket. API key comes from the configured
/// environment variable. When record_dir is non-empty every completion is
/// written there as <key>.txt.
CompletionClient make_live_client(const GeneratorConfig& config,
                                  const std::string& record_dir = "");

/// Reads completions from <dir>/<key>.txt; no network. Missing fixtures
/// are a TransportError.
CompletionClient make_replay_client(const std::string& dir);

// Append-only JSONL store; the on-disk layout doubles as the published
// augmented-references format.
class AugmentationCache {
 public:
  explicit AugmentationCache(const std::string& path);
  std::optional<ReferenceSet> get(const std::string& key) const;
  void put(const std::string& key, const ReferenceSet& refs);

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::string, ReferenceSet> entries_;
};

struct AugmentResult {
  ReferenceSet refs;
  bool from_cache = false;
  bool shortfall = false;  // fewer than n paraphrases survived
};

/// Paraphrase augmentation for one reference question: cache lookup, prompt,
/// completion, parse, dedup, bounded retry while fewer than n/2 items
/// parse. Zero items after all attempts is a GenerationError.
AugmentResult augment_reference(const std::string& question,
                                const GeneratorConfig& config,
                                AugmentationCache* cache,
                                const CompletionClient& client);

/// Concurrent augmentation with in-flight key dedup; results come back in
/// input order regardless of completion order.
std::vector<AugmentResult> augment_many(const std::vector<std::string>& questions,
                                        const GeneratorConfig& config,
                                        AugmentationCache* cache,
                                        const CompletionClient& client,
                                        std::size_t parallelism);

}  // namespace mre
