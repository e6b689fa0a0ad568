#pragma once

#include <string>

#include "mre/embedding.hpp"
#include "mre/textnorm.hpp"
#include "mre/transport.hpp"

namespace mre {

struct BertScoreResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct BertScoreOptions {
  bool idf_weighting = false;   // uniform token weights by default
  // Document-frequency corpus for IDF; required when idf_weighting is on.
  std::vector<TokenSequence> idf_documents;
  bool baseline_rescale = false;
  double rescale_baseline = 0.0;
};

struct MoverOptions {
  bool idf_weighting = false;
  std::vector<TokenSequence> idf_documents;
  std::size_t max_cells = kDefaultTransportCellBound;
};

/// Smoothed inverse document frequency log((|D|+1)/(df+1)) per token.
std::vector<double> idf_weights(const TokenSequence& tokens,
                                const std::vector<TokenSequence>& documents);

/// Greedy soft token matching: precision is the mean over candidate tokens
/// of the max cosine similarity to any reference token, recall symmetric,
/// f1 their harmonic mean.
BertScoreResult bertscore(const TokenSequence& candidate,
                          const TokenSequence& reference,
                          EmbeddingProvider& provider,
                          const BertScoreOptions& opts = {});

/// Word-mover distance with uniform unigram weights and Euclidean ground
/// costs, mapped to a similarity 1/(1 + WMD).
double word_mover_score(const TokenSequence& candidate,
                        const TokenSequence& reference,
                        EmbeddingProvider& provider,
                        const MoverOptions& opts = {});

/// Raw WMD (the transport cost itself), exposed for tests and analysis.
double word_mover_distance(const TokenSequence& candidate,
                           const TokenSequence& reference,
                           EmbeddingProvider& provider,
                           const MoverOptions& opts = {});

/// Remote learned scorer: POST {"candidate": ..., "reference": ...} and
/// return the "score" field verbatim (not clamped).
double external_score(const std::string& endpoint, const std::string& candidate,
                      const std::string& reference, int timeout_seconds = 30);

}  // namespace mre
