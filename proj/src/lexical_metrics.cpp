#include "mre/lexical_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "mre/error.hpp"

namespace mre {

namespace {

std::map<std::vector<std::string>, int> ngram_counts(const TokenSequence& toks,
                                                     std::size_t n) {
  std::map<std::vector<std::string>, int> counts;
  if (toks.size() < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)]++;
  }
  return counts;
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1
                                      : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Minimal suffix stripper for the optional METEOR stem stage.
std::string light_stem(const std::string& w) {
  auto ends_with = [&](const char* suf) {
    std::string s(suf);
    return w.size() > s.size() && w.compare(w.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with("sses")) return w.substr(0, w.size() - 2);
  if (ends_with("ies")) return w.substr(0, w.size() - 2);
  if (ends_with("ing") && w.size() > 5) return w.substr(0, w.size() - 3);
  if (ends_with("ed") && w.size() > 4) return w.substr(0, w.size() - 2);
  if (ends_with("s") && !ends_with("ss")) return w.substr(0, w.size() - 1);
  return w;
}

}  // namespace

double bleu4(const TokenSequence& candidate, const TokenSequence& reference,
             const BleuOptions& opts) {
  if (candidate.empty()) throw DomainError("bleu4: empty candidate");
  if (reference.empty()) throw DomainError("bleu4: empty reference");

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto cand = ngram_counts(candidate, n);
    auto ref = ngram_counts(reference, n);
    int matched = 0, total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    double p;
    if (total == 0 || matched == 0) {
      if (!opts.smoothing) return 0.0;
      // add-one smoothing on the zero orders
      p = 1.0 / (total + 1.0);
    } else {
      p = static_cast<double>(matched) / total;
    }
    log_sum += std::log(p);
  }

  double bp = 1.0;
  if (candidate.size() < reference.size()) {
    bp = std::exp(1.0 - static_cast<double>(reference.size()) /
                            static_cast<double>(candidate.size()));
  }
  return bp * std::exp(log_sum / 4.0);
}

double rouge_l(const TokenSequence& candidate, const TokenSequence& reference) {
  if (candidate.empty() || reference.empty()) {
    throw DomainError("rouge_l: empty input");
  }
  double lcs = static_cast<double>(lcs_length(candidate, reference));
  if (lcs == 0.0) return 0.0;
  double p = lcs / candidate.size();
  double r = lcs / reference.size();
  return 2.0 * p * r / (p + r);
}

double meteor(const TokenSequence& candidate, const TokenSequence& reference,
              const MeteorOptions& opts) {
  if (candidate.empty() || reference.empty()) {
    throw DomainError("meteor: empty input");
  }

  // Alignment: each candidate token pairs with the first unused reference
  // token that matches exactly; the optional stem stage catches leftovers.
  std::vector<bool> ref_used(reference.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (cand, ref)
  std::vector<bool> cand_matched(candidate.size(), false);
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      if (!ref_used[j] && candidate[i] == reference[j]) {
        ref_used[j] = true;
        cand_matched[i] = true;
        matches.emplace_back(i, j);
        break;
      }
    }
  }
  if (opts.stemming) {
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      if (cand_matched[i]) continue;
      for (std::size_t j = 0; j < reference.size(); ++j) {
        if (!ref_used[j] && light_stem(candidate[i]) == light_stem(reference[j])) {
          ref_used[j] = true;
          cand_matched[i] = true;
          matches.emplace_back(i, j);
          break;
        }
      }
    }
  }

  double m = static_cast<double>(matches.size());
  if (m == 0.0) return 0.0;

  double precision = m / candidate.size();
  double recall = m / reference.size();
  double fmean = precision * recall /
                 (opts.alpha * precision + (1.0 - opts.alpha) * recall);

  std::sort(matches.begin(), matches.end());
  std::size_t chunks = 0;
  for (std::size_t k = 0; k < matches.size(); ++k) {
    if (k == 0 || matches[k].first != matches[k - 1].first + 1 ||
        matches[k].second != matches[k - 1].second + 1) {
      ++chunks;
    }
  }

  double penalty = opts.gamma * std::pow(chunks / m, opts.beta);
  return fmean * (1.0 - penalty);
}

}  // namespace mre
