#include "mre/embedding_metrics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mre/error.hpp"
#include "http_client.hpp"

namespace mre {

namespace {

double dot(const Vector& a, const Vector& b) {
  std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

double cosine(const Vector& a, const Vector& b) {
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw ProviderError("zero-norm embedding vector");
  }
  return dot(a, b) / (na * nb);
}

double euclidean(const Vector& a, const Vector& b) {
  std::size_t n = std::max(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ai = i < a.size() ? a[i] : 0.0;
    double bi = i < b.size() ? b[i] : 0.0;
    s += (ai - bi) * (ai - bi);
  }
  return std::sqrt(s);
}

std::vector<std::vector<double>> similarity_matrix(
    const std::vector<Vector>& cand, const std::vector<Vector>& ref) {
  std::vector<std::vector<double>> sim(cand.size(),
                                       std::vector<double>(ref.size()));
  for (std::size_t i = 0; i < cand.size(); ++i) {
    for (std::size_t j = 0; j < ref.size(); ++j) {
      sim[i][j] = cosine(cand[i], ref[j]);
    }
  }
  return sim;
}

std::vector<double> uniform_weights(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

std::vector<double> normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double x : w) sum += x;
  if (sum <= 0.0) throw DomainError("weights must have positive mass");
  for (double& x : w) x /= sum;
  return w;
}

// Normalized IDF weights; uniform fallback when every token has zero idf.
std::vector<double> effective_weights(const TokenSequence& tokens,
                                      const std::vector<TokenSequence>& docs);

}  // namespace

std::vector<double> idf_weights(const TokenSequence& tokens,
                                const std::vector<TokenSequence>& documents) {
  if (documents.empty()) {
    throw ConfigError("idf weighting requires a document corpus");
  }
  std::vector<double> w;
  w.reserve(tokens.size());
  for (const auto& tok : tokens) {
    std::size_t df = 0;
    for (const auto& doc : documents) {
      if (std::find(doc.begin(), doc.end(), tok) != doc.end()) ++df;
    }
    w.push_back(std::log((documents.size() + 1.0) / (df + 1.0)));
  }
  return w;
}

namespace {

std::vector<double> effective_weights(const TokenSequence& tokens,
                                      const std::vector<TokenSequence>& docs) {
  auto w = idf_weights(tokens, docs);
  double sum = 0.0;
  for (double x : w) sum += x;
  if (sum <= 0.0) return uniform_weights(tokens.size());
  return normalized(std::move(w));
}

}  // namespace

BertScoreResult bertscore(const TokenSequence& candidate,
                          const TokenSequence& reference,
                          EmbeddingProvider& provider,
                          const BertScoreOptions& opts) {
  if (candidate.empty() || reference.empty()) {
    throw DomainError("bertscore: empty input");
  }
  auto cand_vecs = provider.embed(candidate);
  auto ref_vecs = provider.embed(reference);
  auto sim = similarity_matrix(cand_vecs, ref_vecs);

  // Raw (unnormalized) weights; the weighted mean divides by their sum so
  // the uniform case reduces to a plain mean.
  auto cand_w = opts.idf_weighting
                    ? effective_weights(candidate, opts.idf_documents)
                    : std::vector<double>(candidate.size(), 1.0);
  auto ref_w = opts.idf_weighting
                   ? effective_weights(reference, opts.idf_documents)
                   : std::vector<double>(reference.size(), 1.0);
  double cand_mass = 0.0, ref_mass = 0.0;
  for (double w : cand_w) cand_mass += w;
  for (double w : ref_w) ref_mass += w;

  double precision = 0.0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    double best = sim[i][0];
    for (std::size_t j = 1; j < reference.size(); ++j) best = std::max(best, sim[i][j]);
    precision += cand_w[i] * best;
  }
  precision /= cand_mass;

  double recall = 0.0;
  for (std::size_t j = 0; j < reference.size(); ++j) {
    double best = sim[0][j];
    for (std::size_t i = 1; i < candidate.size(); ++i) best = std::max(best, sim[i][j]);
    recall += ref_w[j] * best;
  }
  recall /= ref_mass;

  BertScoreResult r;
  r.precision = precision;
  r.recall = recall;
  r.f1 = (precision + recall > 0.0)
             ? 2.0 * precision * recall / (precision + recall)
             : 0.0;
  if (opts.baseline_rescale) {
    double b = opts.rescale_baseline;
    r.precision = (r.precision - b) / (1.0 - b);
    r.recall = (r.recall - b) / (1.0 - b);
    r.f1 = (r.f1 - b) / (1.0 - b);
  }
  return r;
}

double word_mover_distance(const TokenSequence& candidate,
                           const TokenSequence& reference,
                           EmbeddingProvider& provider,
                           const MoverOptions& opts) {
  if (candidate.empty() || reference.empty()) {
    throw DomainError("word_mover_distance: empty input");
  }
  auto cand_vecs = provider.embed(candidate);
  auto ref_vecs = provider.embed(reference);

  TransportProblem problem;
  problem.supply = opts.idf_weighting
                       ? effective_weights(candidate, opts.idf_documents)
                       : uniform_weights(candidate.size());
  problem.demand = opts.idf_weighting
                       ? effective_weights(reference, opts.idf_documents)
                       : uniform_weights(reference.size());
  problem.costs.assign(candidate.size(), std::vector<double>(reference.size()));
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      problem.costs[i][j] = euclidean(cand_vecs[i], ref_vecs[j]);
    }
  }
  return solve_transport(problem, opts.max_cells).cost;
}

double word_mover_score(const TokenSequence& candidate,
                        const TokenSequence& reference,
                        EmbeddingProvider& provider, const MoverOptions& opts) {
  return 1.0 / (1.0 + word_mover_distance(candidate, reference, provider, opts));
}

double external_score(const std::string& endpoint, const std::string& candidate,
                      const std::string& reference, int timeout_seconds) {
  nlohmann::json body = {{"candidate", candidate}, {"reference", reference}};
  nlohmann::json res = detail::http_post_json(endpoint, body, timeout_seconds);
  if (!res.contains("score") || !res["score"].is_number()) {
    throw ProtocolError("scorer response missing numeric \"score\" field");
  }
  return res["score"].get<double>();
}

}  // namespace mre
