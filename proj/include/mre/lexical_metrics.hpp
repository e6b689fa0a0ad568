#pragma once

#include "mre/textnorm.hpp"

namespace mre {

struct BleuOptions {
  // Unsmoothed by default: any zero n-gram precision makes the score 0.
  bool smoothing = false;
};

struct MeteorOptions {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
  bool stemming = false;  // optional Porter-style suffix stripping stage
};

/// Sentence-level BLEU-4: geometric mean of modified 1..4-gram precisions
/// times the brevity penalty.
double bleu4(const TokenSequence& candidate, const TokenSequence& reference,
             const BleuOptions& opts = {});

/// F1 over LCS precision (LCS/|candidate|) and recall (LCS/|reference|).
double rouge_l(const TokenSequence& candidate, const TokenSequence& reference);

/// Unigram alignment score with fragmentation penalty.
double meteor(const TokenSequence& candidate, const TokenSequence& reference,
              const MeteorOptions& opts = {});

}  // namespace mre
