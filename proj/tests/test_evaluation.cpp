#include <doctest.h>

#include <algorithm>
#include <random>

#include "mre/error.hpp"
#include "mre/evaluation.hpp"
#include "mre/textnorm.hpp"

using namespace mre;

namespace {

const char* kE1Candidate = "What is the definition of sustainable energy?";
const char* kE1Reference = "What does it mean if energy is sustainable?";
const char* kE2Candidate = "What are some examples of renewable energy sources?";
const char* kE2Reference = "What are some renewable energy sources?";

std::string random_question(std::mt19937& rng) {
  static const std::vector<std::string> words = {
      "what", "is", "the", "energy", "source", "renewable", "how",
      "why",  "it", "of",  "does",   "mean",   "sustainable"};
  std::string q;
  int len = 3 + rng() % 8;
  for (int i = 0; i < len; ++i) {
    if (i) q += ' ';
    q += words[rng() % words.size()];
  }
  return q + "?";
}

}  // namespace

TEST_CASE("score_single hits the calibration pairs") {
  auto registry = make_builtin_registry();
  CHECK(score_single(registry, {"rouge_l"}, kE2Candidate, kE2Reference).value ==
        doctest::Approx(0.857).epsilon(0.005));
  CHECK(score_single(registry, {"bleu4"}, kE1Candidate, kE1Reference).value == 0.0);
  CHECK(score_single(registry, {"bleu4"}, kE1Candidate, kE1Candidate).value == 1.0);
  CHECK(score_single(registry, {"rouge_l"}, kE1Candidate, kE1Candidate).value == 1.0);
  CHECK_THROWS_AS(score_single(registry, {"bertscore"}, "a?", "b?"), ConfigError);
  CHECK_THROWS_AS(score_single(registry, {"bleu4"}, "", "b?"), DomainError);
}

TEST_CASE("score_multi takes the max over original plus paraphrases") {
  auto registry = make_builtin_registry();

  ReferenceSet only_original;
  only_original.original = kE2Reference;
  auto single = score_single(registry, {"rouge_l"}, kE2Candidate, kE2Reference);
  auto multi = score_multi(registry, {"rouge_l"}, kE2Candidate, only_original);
  CHECK(multi.score.value == single.value);
  CHECK(multi.best_reference_index == 0);

  // paraphrase identical to the candidate lifts BLEU-4 to 1.00
  ReferenceSet refs;
  refs.original = kE1Reference;
  refs.add_paraphrase("What does sustainable energy mean?");
  refs.add_paraphrase(kE1Candidate);
  auto m = score_multi(registry, {"bleu4"}, kE1Candidate, refs);
  CHECK(m.score.value == 1.0);
  CHECK(m.best_reference_index == 2);
}

TEST_CASE("stub metric: max of a finite set, ties break low") {
  MetricRegistry registry;
  registry.add({"bleu4"}, [](const std::string&, const std::string& ref) {
    if (ref == "r0") return 0.2;
    if (ref == "r1") return 0.5;
    return 0.3;
  });
  ReferenceSet refs;
  refs.original = "r0";
  refs.paraphrases = {"r1", "r2"};
  auto m = score_multi(registry, {"bleu4"}, "cand", refs);
  CHECK(m.score.value == 0.5);
  CHECK(m.best_reference_index == 1);

  // equal scores everywhere -> index 0 wins
  MetricRegistry flat;
  flat.add({"bleu4"}, [](const std::string&, const std::string&) { return 0.4; });
  auto t = score_multi(flat, {"bleu4"}, "cand", refs);
  CHECK(t.best_reference_index == 0);
}

TEST_CASE("MRE dominance and paraphrase-permutation invariance") {
  auto registry = make_builtin_registry();
  std::mt19937 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::string cand = random_question(rng);
    ReferenceSet refs;
    refs.original = random_question(rng);
    int n_para = rng() % 5;
    for (int i = 0; i < n_para; ++i) refs.add_paraphrase(random_question(rng));

    for (const auto& metric : {MetricId{"bleu4"}, MetricId{"rouge_l"},
                               MetricId{"meteor"}}) {
      double sre = score_single(registry, metric, cand, refs.original).value;
      auto multi = score_multi(registry, metric, cand, refs);
      CHECK(multi.score.value >= sre);

      ReferenceSet shuffled = refs;
      std::shuffle(shuffled.paraphrases.begin(), shuffled.paraphrases.end(), rng);
      CHECK(score_multi(registry, metric, cand, shuffled).score.value ==
            doctest::Approx(multi.score.value).epsilon(1e-15));
    }
  }
}

TEST_CASE("reference set rejects duplicates and the original") {
  ReferenceSet refs;
  refs.original = "Where is the tower?";
  CHECK(refs.add_paraphrase("Where is the tower located?"));
  CHECK_FALSE(refs.add_paraphrase("WHERE is the Tower located?"));  // case dup
  CHECK_FALSE(refs.add_paraphrase("where is the tower"));           // = original
  CHECK_FALSE(refs.add_paraphrase("  "));
  CHECK(refs.paraphrases.size() == 1);
}

TEST_CASE("delta_report: groups, exclusions, hand-set means") {
  auto rec = [](double human, double sre, double mre) {
    EvaluationRecord r;
    r.context_id = "c";
    r.candidate = "q?";
    r.human_score = human;
    r.scores[{"bleu4"}] = {sre, mre, 1};
    return r;
  };
  std::vector<EvaluationRecord> records = {
      rec(1.0, 0.2, 0.3),  // delta 0.1
      rec(1.0, 0.4, 0.7),  // delta 0.3
      rec(0.0, 0.1, 0.15), // delta 0.05
      rec(0.5, 0.0, 0.9),  // fractional: excluded
  };
  auto report = delta_report(records);
  REQUIRE(report.count({"bleu4"}) == 1);
  auto& row = report[{"bleu4"}];
  CHECK(row.accepted_mean.value() == doctest::Approx(0.2));
  CHECK(row.rejected_mean.value() == doctest::Approx(0.05));
  CHECK(row.accepted_n == 2);
  CHECK(row.rejected_n == 1);

  // all fractional -> both groups absent
  auto empty = delta_report({rec(0.5, 0.1, 0.2)});
  CHECK(empty.empty());
}

TEST_CASE("n_sweep: monotone MRE, truncation warnings, oracle recompute") {
  auto registry = make_builtin_registry();
  std::mt19937 rng(202);
  std::vector<SweepInput> inputs;
  for (int i = 0; i < 20; ++i) {
    SweepInput in;
    in.context_id = "c" + std::to_string(i);
    in.candidate = random_question(rng);
    in.human_score = (i % 3 == 0) ? 1.0 : (i % 3 == 1 ? 0.5 : 0.0);
    in.refs.original = random_question(rng);
    while (in.refs.paraphrases.size() < 5) {
      in.refs.add_paraphrase(random_question(rng));
    }
    inputs.push_back(in);
  }

  std::vector<std::size_t> sizes = {1, 2, 5, 10};
  auto result = n_sweep(registry, {"rouge_l"}, inputs, sizes);
  REQUIRE(result.points.size() == 4);
  CHECK(result.points[3].effective == 5);          // truncated
  CHECK(result.warnings.size() == 1);

  // oracle: recompute each point from raw score_multi over the prefix
  for (const auto& point : result.points) {
    std::vector<double> mre, human;
    for (const auto& in : inputs) {
      ReferenceSet prefix;
      prefix.original = in.refs.original;
      for (std::size_t k = 0; k < point.effective; ++k) {
        prefix.paraphrases.push_back(in.refs.paraphrases[k]);
      }
      mre.push_back(score_multi(registry, {"rouge_l"}, in.candidate, prefix)
                        .score.value);
      human.push_back(in.human_score);
    }
    CHECK(point.pearson == doctest::Approx(pearson(mre, human)).epsilon(1e-12));
    CHECK(point.spearman == doctest::Approx(spearman(mre, human)).epsilon(1e-12));
  }

  // per-record MRE values are non-decreasing in k (recheck via prefixes)
  for (const auto& in : inputs) {
    double prev = -1.0;
    for (std::size_t k = 0; k <= in.refs.paraphrases.size(); ++k) {
      ReferenceSet prefix;
      prefix.original = in.refs.original;
      for (std::size_t j = 0; j < k; ++j) {
        prefix.paraphrases.push_back(in.refs.paraphrases[j]);
      }
      double v = score_multi(registry, {"rouge_l"}, in.candidate, prefix)
                     .score.value;
      CHECK(v >= prev);
      prev = v;
    }
  }

  // degenerate human scores
  for (auto& in : inputs) in.human_score = 1.0;
  CHECK_THROWS_AS(n_sweep(registry, {"rouge_l"}, inputs, sizes), DomainError);
}

TEST_CASE("correlation_report: perfect linear case and degenerate cells") {
  std::vector<EvaluationRecord> records;
  for (int i = 0; i < 6; ++i) {
    EvaluationRecord r;
    r.context_id = "c" + std::to_string(i);
    r.candidate = "q?";
    r.human_score = (i % 2 == 0) ? 1.0 : 0.0;
    r.scores[{"rouge_l"}] = {0.5, r.human_score, 0};  // mre == human
    r.scores[{"bleu4"}] = {0.3, 0.3, 0};              // constant: undefined
    records.push_back(r);
  }
  auto report = correlation_report(records, {{"rouge_l"}, {"bleu4"}});
  CHECK(report.rows[{"rouge_l"}].mre_pearson.value() == doctest::Approx(1.0));
  CHECK(report.rows[{"rouge_l"}].mre_spearman.value() == doctest::Approx(1.0));
  CHECK_FALSE(report.rows[{"rouge_l"}].sre_pearson.has_value());  // sre constant
  CHECK_FALSE(report.rows[{"bleu4"}].mre_pearson.has_value());
  CHECK(report.rows[{"bleu4"}].n == 6);
}
