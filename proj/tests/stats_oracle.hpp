#pragma once

// Test-only correlation oracles working from raw moment sums and O(n^2)
// rank counting, independent of the centered/sort-based implementations.

#include <cmath>
#include <vector>

namespace mre::testing {

inline double pearson_oracle(const std::vector<double>& x,
                             const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) /
         std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

inline std::vector<double> ranks_oracle(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < x[i]) ++less;
      if (x[j] == x[i]) ++equal;
    }
    r[i] = (static_cast<double>(less + 1) + static_cast<double>(less + equal)) /
           2.0;
  }
  return r;
}

inline double spearman_oracle(const std::vector<double>& x,
                              const std::vector<double>& y) {
  return pearson_oracle(ranks_oracle(x), ranks_oracle(y));
}

}  // namespace mre::testing
