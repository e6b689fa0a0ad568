#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mre/error.hpp"
#include "mre/stats.hpp"
#include "stats_oracle.hpp"

using namespace mre;
using testing::pearson_oracle;
using testing::ranks_oracle;
using testing::spearman_oracle;

TEST_CASE("pearson basics") {
  std::vector<double> x = {1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 1);
  CHECK(pearson(x, y) == doctest::Approx(1.0));
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  CHECK(pearson(x, neg) == doctest::Approx(-1.0));
  CHECK(pearson({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
}

TEST_CASE("pearson/spearman error paths") {
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(pearson({1}, {1}), DomainError);
  CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), DomainError);  // constant
  CHECK_THROWS_AS(spearman({2, 2}, {1, 3}), DomainError);
}

TEST_CASE("spearman basics and tie ranks") {
  CHECK(spearman({1, 2, 3}, {10, 20, 30}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
  CHECK(average_ranks({1, 2, 2, 3}) == std::vector<double>{1, 2.5, 2.5, 4});
  CHECK(average_ranks({5, 5, 5}) == std::vector<double>{2, 2, 2});
}

TEST_CASE("spearman invariant under strictly increasing transforms") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unif(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
      x.push_back(unif(rng));
      y.push_back(unif(rng));
    }
    std::vector<double> fx;
    for (double v : x) fx.push_back(std::exp(v / 3.0));  // strictly increasing
    CHECK(spearman(x, y) == doctest::Approx(spearman(fx, y)).epsilon(1e-12));
    CHECK(spearman(x, y) == doctest::Approx(spearman(y, x)).epsilon(1e-12));
  }
}

TEST_CASE("agrees with the definition-based oracle on 200 random vectors") {
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> unif(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t len = 2 + rng() % 99;
    bool with_ties = trial % 2 == 0;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < len; ++i) {
      if (with_ties) {
        x.push_back(static_cast<double>(rng() % 5) / 4.0);
        y.push_back(static_cast<double>(rng() % 5) / 4.0);
      } else {
        x.push_back(unif(rng));
        y.push_back(unif(rng));
      }
    }
    auto constant = [](const std::vector<double>& v) {
      for (double e : v) {
        if (e != v[0]) return false;
      }
      return true;
    };
    if (constant(x) || constant(y)) continue;
    CHECK(std::abs(pearson(x, y) - pearson_oracle(x, y)) < 1e-10);
    CHECK(std::abs(spearman(x, y) - spearman_oracle(x, y)) < 1e-10);
  }
}

TEST_CASE("no-ties spearman closed form matches rank computation") {
  std::mt19937 rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 3 + rng() % 30;
    // distinct values via a shuffled sequence
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(i);
      y[i] = static_cast<double>(i);
    }
    std::shuffle(x.begin(), x.end(), rng);
    std::shuffle(y.begin(), y.end(), rng);
    auto rx = average_ranks(x), ry = average_ranks(y);
    double d2 = 0;
    for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    double closed = 1.0 - 6.0 * d2 / (n * (static_cast<double>(n) * n - 1));
    CHECK(spearman(x, y) == doctest::Approx(closed).epsilon(1e-12));
  }
}
