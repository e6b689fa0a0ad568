#pragma once

#include <map>
#include <string>
#include <vector>

namespace mre {

// One annotated example from the quiz-design layout: a generated question
// plus binary accept/reject ratings from the annotators.
struct QuizSample {
  std::string context_id;
  std::string context;
  std::string answer;
  std::string question;
  std::vector<int> annotations;  // each 0 or 1
  double human_score = 0.0;      // mean of annotations
};

// Reference pool (human score exactly 1) vs. candidate pool, per context.
// Contexts with no accepted question are unusable and listed in `skipped`.
struct CorpusSplit {
  std::map<std::string, std::vector<std::string>> references;
  std::vector<QuizSample> candidates;
  std::vector<QuizSample> skipped;
};

/// Mean of binary ratings. Throws DomainError on empty input or values
/// outside {0,1}.
double human_score(const std::vector<int>& annotations);

/// Reads a line-delimited dataset (one JSON object per line). Preserves
/// input order; throws SchemaError with the offending line number.
std::vector<QuizSample> load_dataset(const std::string& path);

/// Questions with human score 1 become references (first one in file order
/// is the primary reference); everything else becomes a candidate, unless
/// its context has no reference at all, in which case it is skipped.
CorpusSplit split_corpus(const std::vector<QuizSample>& samples);

}  // namespace mre
