#include "mre/embedding.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "mre/error.hpp"
#include "http_client.hpp"

namespace mre {

OneHotProvider::OneHotProvider(std::vector<std::string> vocabulary) {
  for (const auto& word : vocabulary) {
    index_.emplace(word, index_.size());
  }
  if (index_.empty()) throw ProviderError("one-hot vocabulary is empty");
}

std::vector<Vector> OneHotProvider::embed(const TokenSequence& tokens) {
  std::vector<Vector> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto it = index_.find(tok);
    if (it == index_.end()) {
      throw ProviderError("one-hot provider: token not in vocabulary: " + tok);
    }
    Vector v(index_.size(), 0.0);
    v[it->second] = 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

FileEmbeddingProvider::FileEmbeddingProvider(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embedding file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    try {
      std::string text = j.at("text").get<std::string>();
      auto vectors = j.at("vectors").get<std::vector<Vector>>();
      auto tokens = j.at("tokens").get<std::vector<std::string>>();
      if (vectors.size() != tokens.size()) {
        throw SchemaError("vectors/tokens length mismatch", lineno);
      }
      table_[normalized_key(text)] = std::move(vectors);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(e.what(), lineno);
    }
  }
}

std::vector<Vector> FileEmbeddingProvider::embed(const TokenSequence& tokens) {
  auto it = table_.find(join(tokens));
  if (it == table_.end()) {
    throw ProviderError("embedding file has no entry for: " + join(tokens));
  }
  if (it->second.size() != tokens.size()) {
    throw ProviderError("embedding entry token count mismatch for: " +
                        join(tokens));
  }
  return it->second;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(const std::string& endpoint,
                                             int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  auto url = detail::parse_url(endpoint);
  host_ = url.scheme_host;
  path_ = url.path;
}

std::vector<Vector> HttpEmbeddingProvider::embed(const TokenSequence& tokens) {
  nlohmann::json body = {{"text", join(tokens)}};
  nlohmann::json res = detail::http_post_json(host_ + path_, body, timeout_seconds_);
  if (!res.contains("vectors") || !res["vectors"].is_array()) {
    throw ProtocolError("embedding endpoint response missing \"vectors\"");
  }
  std::vector<Vector> vectors;
  try {
    vectors = res["vectors"].get<std::vector<Vector>>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed \"vectors\" field: ") + e.what());
  }
  if (vectors.size() != tokens.size()) {
    throw ProviderError("embedding endpoint returned " +
                        std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(tokens.size()) + " tokens");
  }
  for (const auto& v : vectors) {
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw ProviderError("embedding endpoint returned non-finite entry");
      }
    }
  }
  return vectors;
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(
    const std::string& spec, const std::vector<std::string>& vocabulary_texts) {
  if (spec == "onehot") {
    std::vector<std::string> vocab;
    for (const auto& text : vocabulary_texts) {
      for (auto& tok : normalize(text)) vocab.push_back(std::move(tok));
    }
    return std::make_unique<OneHotProvider>(std::move(vocab));
  }
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    return std::make_unique<HttpEmbeddingProvider>(spec);
  }
  return std::make_unique<FileEmbeddingProvider>(spec);
}

}  // namespace mre
