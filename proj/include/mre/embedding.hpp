#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mre/textnorm.hpp"

namespace mre {

using Vector = std::vector<double>;

/// One vector per token, all of one dimension d > 0, finite entries,
/// deterministic for a fixed configuration.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<Vector> embed(const TokenSequence& tokens) = 0;
};

/// Orthogonal unit vectors over a fixed vocabulary; identical tokens map to
/// identical vectors. Unknown tokens are a ProviderError.
class OneHotProvider : public EmbeddingProvider {
 public:
  explicit OneHotProvider(std::vector<std::string> vocabulary);
  std::vector<Vector> embed(const TokenSequence& tokens) override;

 private:
  std::map<std::string, std::size_t> index_;
};

/// Precomputed embeddings from a line-delimited file of
/// {"text": ..., "tokens": [...], "vectors": [[...]...]} records;
/// lookup is exact on the normalized text.
class FileEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit FileEmbeddingProvider(const std::string& path);
  std::vector<Vector> embed(const TokenSequence& tokens) override;

 private:
  std::map<std::string, std::vector<Vector>> table_;  // normalized text -> vectors
};

/// Remote embedding endpoint: POST {"text": ...} -> {"vectors": [[...]...]}.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(const std::string& endpoint,
                                 int timeout_seconds = 30);
  std::vector<Vector> embed(const TokenSequence& tokens) override;

 private:
  std::string host_;
  std::string path_;
  int timeout_seconds_;
};

/// Picks a provider from a CLI-style spec: "onehot:<dataset vocab file is
/// built by the caller>", an http(s) URL, or a file path.
std::unique_ptr<EmbeddingProvider> make_embedding_provider(
    const std::string& spec, const std::vector<std::string>& vocabulary_texts);

}  // namespace mre
