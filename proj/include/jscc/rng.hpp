// Deterministic RNG helpers.  A 64-bit master seed plus a counter derives
// independent per-task streams (order-independent, reproducible regardless of
// scheduling).
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace jscc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  return splitmix64(master ^ splitmix64(counter + 0x51'7c'c1'b7'27'22'0a'95ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform double in [0, 1) with 53 random bits (portable across stdlibs).
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return eng_(); }

  std::size_t uniform_index(std::size_t n) {
    return std::size_t(uniform() * double(n)) % n;
  }

  // Sample an index from a pmf (linear scan; alphabets here are tiny).
  std::size_t sample(const std::vector<double>& pmf) {
    double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      acc += pmf[i];
      if (u < acc) return i;
    }
    return pmf.size() - 1;
  }

  // Random interior point of the probability simplex (Dirichlet(1,...,1)).
  std::vector<double> simplex_point(std::size_t dim) {
    std::vector<double> x(dim);
    double sum = 0.0;
    for (auto& v : x) {
      v = -std::log(1.0 - uniform() + 1e-300);
      sum += v;
    }
    for (auto& v : x) v /= sum;
    return x;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace jscc
