#include "mre/corpus.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "mre/error.hpp"

namespace mre {

double human_score(const std::vector<int>& annotations) {
  if (annotations.empty()) throw DomainError("annotations must be non-empty");
  int sum = 0;
  for (int a : annotations) {
    if (a != 0 && a != 1) {
      throw DomainError("annotation value must be 0 or 1, got " +
                        std::to_string(a));
    }
    sum += a;
  }
  return static_cast<double>(sum) / static_cast<double>(annotations.size());
}

std::vector<QuizSample> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path);

  std::vector<QuizSample> samples;
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
    QuizSample s;
    try {
      s.context_id = j.at("context_id").get<std::string>();
      s.context = j.at("context").get<std::string>();
      s.answer = j.at("answer").get<std::string>();
      s.question = j.at("question").get<std::string>();
      const auto& ann = j.at("annotations");
      if (!ann.is_array()) throw DomainError("annotations must be an array");
      for (const auto& a : ann) {
        if (!a.is_number_integer()) {
          throw DomainError("annotations must contain integers");
        }
        s.annotations.push_back(a.get<int>());
      }
      s.human_score = human_score(s.annotations);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(e.what(), lineno);
    } catch (const DomainError& e) {
      throw SchemaError(e.what(), lineno);
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

CorpusSplit split_corpus(const std::vector<QuizSample>& samples) {
  CorpusSplit split;
  std::set<std::string> has_reference;
  for (const auto& s : samples) {
    if (s.human_score == 1.0) {
      split.references[s.context_id].push_back(s.question);
      has_reference.insert(s.context_id);
    }
  }
  for (const auto& s : samples) {
    if (s.human_score == 1.0) continue;
    if (has_reference.count(s.context_id)) {
      split.candidates.push_back(s);
    } else {
      split.skipped.push_back(s);
    }
  }
  return split;
}

}  // namespace mre
