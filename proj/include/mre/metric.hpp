#pragma once

#include <string>

namespace mre {

// Closed set of metric names, plus "external:<label>" for remote learned
// scorers (those may fall outside [0,1]).
struct MetricId {
  std::string name;

  static MetricId parse(const std::string& name);
  bool is_external() const { return name.rfind("external:", 0) == 0; }

  bool operator<(const MetricId& o) const { return name < o.name; }
  bool operator==(const MetricId& o) const { return name == o.name; }
};

struct MetricScore {
  MetricId metric;
  double value = 0.0;
};

}  // namespace mre
