#include "mre/metric.hpp"

#include <array>

#include "mre/error.hpp"

namespace mre {

MetricId MetricId::parse(const std::string& name) {
  static constexpr std::array<const char*, 5> kBuiltin = {
      "bleu4", "rouge_l", "meteor", "bertscore", "moverscore"};
  for (const char* b : kBuiltin) {
    if (name == b) return {name};
  }
  if (name.rfind("external:", 0) == 0 && name.size() > 9) return {name};
  throw ConfigError("unknown metric name: " + name);
}

}  // namespace mre
