#include "mre/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mre/error.hpp"
#include "mre/textnorm.hpp"

namespace mre {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string cell(const std::optional<double>& v) {
  return v ? fmt(*v) : "-";
}

void append_row(std::ostringstream& out, const std::vector<std::string>& cols,
                const std::vector<int>& widths) {
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "  " : "");
    out << cols[i];
    for (int pad = widths[i] - static_cast<int>(cols[i].size()); pad > 0; --pad) {
      out << ' ';
    }
  }
  out << "\n";
}

}  // namespace

void write_scored_records(const std::string& path,
                          const std::vector<EvaluationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  for (const auto& rec : records) {
    nlohmann::json scores = nlohmann::json::object();
    for (const auto& [metric, s] : rec.scores) {
      scores[metric.name] = {{"sre", s.sre},
                             {"mre", s.mre},
                             {"best_reference_index", s.best_reference_index}};
    }
    nlohmann::json j = {{"context_id", rec.context_id},
                        {"candidate", rec.candidate},
                        {"human_score", rec.human_score},
                        {"scores", scores}};
    out << j.dump() << "\n";
  }
}

std::vector<EvaluationRecord> read_scored_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scored-records file: " + path);
  std::vector<EvaluationRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      EvaluationRecord rec;
      rec.context_id = j.at("context_id").get<std::string>();
      rec.candidate = j.at("candidate").get<std::string>();
      rec.human_score = j.at("human_score").get<double>();
      for (const auto& [name, s] : j.at("scores").items()) {
        PerMetricScores pm;
        pm.sre = s.at("sre").get<double>();
        pm.mre = s.at("mre").get<double>();
        pm.best_reference_index = s.at("best_reference_index").get<int>();
        rec.scores[MetricId{name}] = pm;
      }
      records.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(e.what(), lineno);
    }
  }
  return records;
}

std::map<std::string, ReferenceSet> load_reference_sets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open references file: " + path);
  std::map<std::string, ReferenceSet> sets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      ReferenceSet refs;
      refs.original = j.at("source_question").get<std::string>();
      refs.provenance.generator = j.value("model", "");
      refs.provenance.mode = j.value("mode", "");
      refs.provenance.temperature = j.value("temperature", 0.0);
      for (const auto& p : j.at("paraphrases")) {
        refs.add_paraphrase(p.get<std::string>());
      }
      sets[normalized_key(refs.original)] = std::move(refs);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(e.what(), lineno);
    }
  }
  return sets;
}

void write_reference_sets(const std::string& path,
                          const std::vector<ReferenceSet>& sets) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  for (const auto& refs : sets) {
    nlohmann::json j = {{"source_question", refs.original},
                        {"model", refs.provenance.generator},
                        {"mode", refs.provenance.mode},
                        {"temperature", refs.provenance.temperature},
                        {"paraphrases", refs.paraphrases}};
    out << j.dump() << "\n";
  }
}

std::string correlation_report_json(const CorrelationReport& report) {
  nlohmann::json rows = nlohmann::json::object();
  for (const auto& [metric, row] : report.rows) {
    nlohmann::json r = {{"n", row.n}};
    auto set = [&r](const char* name, const std::optional<double>& v) {
      if (v) r[name] = *v;
    };
    set("sre_pearson", row.sre_pearson);
    set("mre_pearson", row.mre_pearson);
    set("sre_spearman", row.sre_spearman);
    set("mre_spearman", row.mre_spearman);
    rows[metric.name] = r;
  }
  return rows.dump(2);
}

std::string format_correlation_table(const CorrelationReport& report) {
  std::ostringstream out;
  std::vector<int> widths = {12, 6, 11, 11, 12, 12};
  append_row(out, {"metric", "n", "SRE (r)", "MRE (r)", "SRE (rho)", "MRE (rho)"},
             widths);
  for (const auto& [metric, row] : report.rows) {
    append_row(out,
               {metric.name, std::to_string(row.n), cell(row.sre_pearson),
                cell(row.mre_pearson), cell(row.sre_spearman),
                cell(row.mre_spearman)},
               widths);
  }
  return out.str();
}

std::string delta_report_json(const std::map<MetricId, DeltaRow>& report) {
  nlohmann::json rows = nlohmann::json::object();
  for (const auto& [metric, row] : report) {
    nlohmann::json r = {{"accepted_n", row.accepted_n},
                        {"rejected_n", row.rejected_n}};
    if (row.accepted_mean) r["accepted_mean_delta"] = *row.accepted_mean;
    if (row.rejected_mean) r["rejected_mean_delta"] = *row.rejected_mean;
    rows[metric.name] = r;
  }
  return rows.dump(2);
}

std::string format_delta_table(const std::map<MetricId, DeltaRow>& report) {
  std::ostringstream out;
  std::vector<int> widths = {12, 18, 18};
  append_row(out, {"metric", "delta(score=1)", "delta(score=0)"}, widths);
  for (const auto& [metric, row] : report) {
    append_row(out,
               {metric.name, cell(row.accepted_mean), cell(row.rejected_mean)},
               widths);
  }
  return out.str();
}

std::string sweep_json(const MetricId& metric, const SweepResult& result) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : result.points) {
    points.push_back({{"size", p.size},
                      {"effective", p.effective},
                      {"pearson", p.pearson},
                      {"spearman", p.spearman}});
  }
  nlohmann::json j = {{"metric", metric.name},
                      {"points", points},
                      {"warnings", result.warnings}};
  return j.dump(2);
}

std::string format_sweep_table(const MetricId& metric, const SweepResult& result) {
  std::ostringstream out;
  out << "metric: " << metric.name << "\n";
  std::vector<int> widths = {6, 10, 9, 9};
  append_row(out, {"N", "effective", "pearson", "spearman"}, widths);
  for (const auto& p : result.points) {
    append_row(out,
               {std::to_string(p.size), std::to_string(p.effective),
                fmt(p.pearson), fmt(p.spearman)},
               widths);
  }
  for (const auto& w : result.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace mre
