#include "mre/augment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mre/error.hpp"
#include "mre/textnorm.hpp"
#include "http_client.hpp"

namespace mre {

namespace {

// Bumped whenever the template text changes, so stale cache entries miss.
constexpr const char* kPromptVersion = "v1";

constexpr const char* kInstruction =
    "Please paraphrase the following sentence ";

// Three fixed demonstration blocks for the few-shot prompt.
constexpr const char* kFewShotDemos =
    R"(Sentence: What is this software found useful for?
1. For what purpose is this software deemed useful?
2. What are the uses of this software?
3. Can you tell me what this software is useful for?
4. What are the benefits of this software?
5. In what ways is this software found to be useful?
6. What are the applications of this software?
7. Can you explain the usefulness of this software?
8. What does this software excel at?
9. Can you tell me what tasks this software is useful for?
10. In what scenario is this software useful?
11. Can you describe the utility of this software?
12. What is the purpose of this software?
13. For what is this software commonly used?
14. What does this software aid in?
15. Can you tell me the function of this software?
16. What are the advantages of this software?
17. What is this software good for?
18. In what ways does this software provide value?
19. What is the benefit of using this software?
20. Can you tell me what this software is commonly used for?

Sentence: Who is the girl?
1. Can you tell me the name of the young lady?
2. Who is the female in question?
3. Could you identify the girl for me?
4. To whom are you referring as the girl?
5. The girl, who is she?
6. Could you tell me who the girl is?
7. Who is the young woman being spoken of?
8. Can you name the girl in question?
9. Who is the lady in question?
10. Could you give me the name of the girl?
11. Who is being referred to as the girl?
12. Can you tell me who the female is?
13. Who is the girl being discussed?
14. Can you identify the young lady?
15. The girl, can you tell me her name?
16. Who is the subject of the girl?
17. Can you name the female in question?
18. Who is the girl you are asking about?
19. Can you provide the name of the girl?
20. Who is the young woman being referred to?

Sentence: Where is the Eiffel Tower?
1. Can you tell me the location of the Eiffel Tower?
2. Could you inform me where the Eiffel Tower is situated?
3. I'm wondering where the Eiffel Tower is located?
4. The Eiffel Tower, where can I find it?
5. Could you give me the whereabouts of the Eiffel Tower?
6. The Eiffel Tower, where is it located?
7. Can you indicate the location of the Eiffel Tower?
8. Can you provide me with the location of the Eiffel Tower?
9. Where can I find the Eiffel Tower?
10. The Eiffel Tower, where is it situated?
11. Can you tell me where the Eiffel Tower is located?
12. Could you give me the location of the Eiffel Tower?
13. Where is the Eiffel Tower situated?
14. The Eiffel Tower, where is it found?
15. Could you inform me where the Eiffel Tower can be found?
16. Can you give me the whereabouts of the Eiffel Tower?
17. Where is the Eiffel Tower located?
18. The Eiffel Tower, where is it positioned?
19. Can you indicate the whereabouts of the Eiffel Tower?
20. Can you provide me with the whereabouts of the Eiffel Tower?
)";

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Blocking token bucket capping the request rate.
class RateLimiter {
 public:
  explicit RateLimiter(double per_second)
      : per_second_(per_second), tokens_(1.0),
        last_(std::chrono::steady_clock::now()) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    for (;;) {
      auto now = std::chrono::steady_clock::now();
      tokens_ = std::min(1.0, tokens_ + per_second_ *
                                  std::chrono::duration<double>(now - last_).count());
      last_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      lock.unlock();
      std::this_thread::sleep_for(
          std::chrono::duration<double>((1.0 - tokens_) / per_second_));
      lock.lock();
    }
  }

 private:
  double per_second_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  std::mutex mutex_;
};

nlohmann::json cache_entry_json(const std::string& key, const ReferenceSet& refs) {
  return {{"key", key},
          {"source_question", refs.original},
          {"model", refs.provenance.generator},
          {"mode", refs.provenance.mode},
          {"temperature", refs.provenance.temperature},
          {"paraphrases", refs.paraphrases}};
}

}  // namespace

std::string to_string(PromptMode mode) {
  return mode == PromptMode::kZeroShot ? "zero_shot" : "few_shot";
}

PromptMode parse_prompt_mode(const std::string& s) {
  if (s == "zero" || s == "zero_shot" || s == "0-shot") return PromptMode::kZeroShot;
  if (s == "few" || s == "few_shot" || s == "3-shot") return PromptMode::kFewShot;
  throw ConfigError("unknown prompt mode: " + s);
}

std::string build_prompt(const std::string& question, PromptMode mode, int n) {
  if (question.empty()) throw DomainError("build_prompt: empty question");
  std::string instruction =
      std::string(kInstruction) + std::to_string(n) + " times:";
  if (mode == PromptMode::kZeroShot) {
    return instruction + "\n" + question;
  }
  return instruction + "\n\n" + kFewShotDemos + "\nSentence: " + question;
}

std::vector<std::string> parse_paraphrases(const std::string& completion) {
  static const std::regex item_re(R"(^\s*\d+\s*[.):\-]\s*(.*?)\s*$)");
  std::vector<std::string> items;
  std::vector<std::string> seen_keys;
  std::istringstream in(completion);
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, item_re)) continue;
    std::string item = trim(m[1].str());
    if (item.empty()) continue;
    std::string key = normalized_key(item);
    if (key.empty()) continue;
    if (std::find(seen_keys.begin(), seen_keys.end(), key) != seen_keys.end()) {
      continue;
    }
    seen_keys.push_back(key);
    items.push_back(item);
  }
  return items;
}

std::string cache_key(const GeneratorConfig& config, const std::string& question) {
  nlohmann::json canon = {{"model", config.model},
                          {"mode", to_string(config.mode)},
                          {"temperature", config.temperature},
                          {"n", config.n},
                          {"question", normalized_key(question)},
                          {"prompt_version", kPromptVersion}};
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon.dump())));
  return buf;
}

CompletionClient make_live_client(const GeneratorConfig& config,
                                  const std::string& record_dir) {
  auto limiter = std::make_shared<RateLimiter>(config.requests_per_second);
  return [config, record_dir, limiter](const std::string& prompt,
                                       const std::string& key) {
    if (config.endpoint.empty()) {
      throw ConfigError("no completion endpoint configured");
    }
    std::map<std::string, std::string> headers;
    if (const char* api_key = std::getenv(config.api_key_env.c_str())) {
      headers["Authorization"] = std::string("Bearer ") + api_key;
    }
    nlohmann::json body = {
        {"model", config.model},
        {"temperature", config.temperature},
        {"messages", {{{"role", "user"}, {"content", prompt}}}}};

    thread_local std::mt19937 rng{std::random_device{}()};
    double backoff = config.initial_backoff_seconds;
    for (int attempt = 1;; ++attempt) {
      limiter->acquire();
      try {
        nlohmann::json res = detail::http_post_json(config.endpoint, body,
                                                    config.timeout_seconds,
                                                    headers);
        std::string text;
        try {
          const auto& choice = res.at("choices").at(0);
          if (choice.contains("message")) {
            text = choice.at("message").at("content").get<std::string>();
          } else {
            text = choice.at("text").get<std::string>();
          }
        } catch (const nlohmann::json::exception& e) {
          throw ProtocolError(std::string("unexpected completion shape: ") +
                              e.what());
        }
        if (!record_dir.empty()) {
          std::filesystem::create_directories(record_dir);
          std::ofstream out(std::filesystem::path(record_dir) / (key + ".txt"));
          out << text;
        }
        return text;
      } catch (const TransportError&) {
        if (attempt >= config.max_attempts) throw;
        std::uniform_real_distribution<double> jitter(0.0, backoff);
        std::this_thread::sleep_for(
            std::chrono::duration<double>(backoff + jitter(rng)));
        backoff *= 2.0;
      }
    }
  };
}

CompletionClient make_replay_client(const std::string& dir) {
  return [dir](const std::string& /*prompt*/, const std::string& key) {
    auto path = std::filesystem::path(dir) / (key + ".txt");
    std::ifstream in(path);
    if (!in) {
      throw TransportError("no recorded fixture for key " + key + " in " + dir);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
}

AugmentationCache::AugmentationCache(const std::string& path) : path_(path) {
  std::ifstream in(path);
  if (!in) return;  // fresh cache
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      ReferenceSet refs;
      refs.original = j.at("source_question").get<std::string>();
      refs.provenance.generator = j.at("model").get<std::string>();
      refs.provenance.mode = j.at("mode").get<std::string>();
      refs.provenance.temperature = j.at("temperature").get<double>();
      for (const auto& p : j.at("paraphrases")) {
        refs.paraphrases.push_back(p.get<std::string>());
      }
      entries_[j.at("key").get<std::string>()] = std::move(refs);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("bad cache entry: ") + e.what(), lineno);
    }
  }
}

std::optional<ReferenceSet> AugmentationCache::get(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void AugmentationCache::put(const std::string& key, const ReferenceSet& refs) {
  std::lock_guard lock(mutex_);
  if (entries_.count(key)) return;
  entries_[key] = refs;
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot append to cache file: " + path_);
    out << cache_entry_json(key, refs).dump() << "\n";
  }
}

AugmentResult augment_reference(const std::string& question,
                                const GeneratorConfig& config,
                                AugmentationCache* cache,
                                const CompletionClient& client) {
  if (question.empty()) throw DomainError("augment_reference: empty question");
  if (config.n < 1) throw ConfigError("augment: n must be >= 1");

  std::string key = cache_key(config, question);
  if (cache) {
    if (auto hit = cache->get(key)) {
      AugmentResult r;
      r.refs = *hit;
      r.from_cache = true;
      r.shortfall = r.refs.paraphrases.size() < static_cast<std::size_t>(config.n);
      return r;
    }
  }

  AugmentResult result;
  result.refs.original = question;
  result.refs.provenance = {config.model, to_string(config.mode),
                            config.temperature};

  std::string prompt = build_prompt(question, config.mode, config.n);
  std::size_t target = static_cast<std::size_t>(config.n);
  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    std::string completion = client(prompt, key);
    std::size_t before = result.refs.paraphrases.size();
    for (const auto& item : parse_paraphrases(completion)) {
      if (result.refs.paraphrases.size() >= target) break;
      result.refs.add_paraphrase(item);
    }
    std::size_t have = result.refs.paraphrases.size();
    if (have >= (target + 1) / 2) break;       // enough parsed; stop retrying
    if (have == before && attempt > 1) break;  // no progress, give up early
  }

  if (result.refs.paraphrases.empty()) {
    throw GenerationError("augment: no paraphrases parsed for question: " +
                              question,
                          {});
  }
  result.shortfall = result.refs.paraphrases.size() < target;
  if (cache) cache->put(key, result.refs);
  return result;
}

std::vector<AugmentResult> augment_many(const std::vector<std::string>& questions,
                                        const GeneratorConfig& config,
                                        AugmentationCache* cache,
                                        const CompletionClient& client,
                                        std::size_t parallelism) {
  parallelism = std::max<std::size_t>(1, parallelism);

  // In-flight dedup: each distinct key is augmented once per process.
  std::vector<std::string> keys;
  keys.reserve(questions.size());
  std::map<std::string, std::size_t> first_index;
  std::vector<std::size_t> work;  // indices that actually run
  for (std::size_t i = 0; i < questions.size(); ++i) {
    keys.push_back(cache_key(config, questions[i]));
    if (first_index.emplace(keys.back(), i).second) work.push_back(i);
  }

  std::vector<AugmentResult> results(questions.size());
  std::vector<std::exception_ptr> errors(questions.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t w = next.fetch_add(1);
      if (w >= work.size()) return;
      std::size_t i = work[w];
      try {
        results[i] = augment_reference(questions[i], config, cache, client);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < std::min(parallelism, work.size()); ++t) {
    threads.emplace_back(worker);
  }
  for (auto& t : threads) t.join();

  for (std::size_t i = 0; i < questions.size(); ++i) {
    std::size_t src = first_index[keys[i]];
    if (errors[src]) std::rethrow_exception(errors[src]);
    if (src != i) results[i] = results[src];
  }
  return results;
}

}  // namespace mre
