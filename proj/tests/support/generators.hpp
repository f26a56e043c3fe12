#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "trajgrid/core/geometry.hpp"
#include "trajgrid/core/semantic.hpp"

namespace trajgrid::testing {

/// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal(double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Vec2 point(double extent) { return {uniform(-extent, extent), uniform(-extent, extent)}; }

  /// Random walk of `n` points with heavy-tailed steps so some points leave a grid of half-extent `extent`.
  std::vector<Vec2> walk(int n, double extent) {
    std::vector<Vec2> pts;
    Vec2 p = point(extent);
    for (int i = 0; i < n; ++i) {
      pts.push_back(p);
      const double step = coin(0.1) ? 400.0 : 15.0;
      p = p + Vec2{normal(step), normal(step)};
    }
    return pts;
  }

  std::vector<std::vector<Vec2>> trajectory_set(int k, int t, double extent) {
    std::vector<std::vector<Vec2>> set;
    for (int i = 0; i < k; ++i) set.push_back(walk(t, extent));
    return set;
  }

  SemanticLabelMap label_map(int w, int h) {
    SemanticLabelMap m(w, h, SemanticClass::path);
    for (auto& c : m.classes) c = static_cast<SemanticClass>(integer(0, 2));
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace trajgrid::testing
