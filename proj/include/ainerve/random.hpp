#pragma once
#include <cstdint>
#include <random>
#include "ainerve/graded.hpp"

namespace ain {

// Seeded generator with platform-independent integer sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t next() { return g_(); }
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int num, int den) { return uniform(0, den - 1) < num; }

 private:
  std::mt19937_64 g_;
};

Mat random_matrix(Rng& rng, size_t rows, size_t cols, int bound = 2);

// d_{n+1} is drawn from the left null space of d_n, so d^2 = 0 by construction.
ChainComplex random_cochain(Rng& rng, int lo, int hi, int maxdim = 3, const std::string& prefix = "e");
ChainComplex random_chain(Rng& rng, int lo, int hi, int maxdim = 3, const std::string& prefix = "e");

}  // namespace ain
