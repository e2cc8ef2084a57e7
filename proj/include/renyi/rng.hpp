#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string_view>
#include <vector>

namespace renyi::rng {

// splitmix64; used both for seed derivation and as the core generator.
// All distributions below are hand-rolled so that streams are identical
// across platforms and standard libraries.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : sm_(seed) {}

  std::uint64_t bits() { return sm_.next(); }

  // uniform on [0, 1)
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1]; never returns 0, safe for log()
  double uniform_pos() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return n ? bits() % n : 0; }

  double exponential(double rate = 1.0) { return -std::log(uniform_pos()) / rate; }

  // Poisson count via inversion by multiplication; fine for small means.
  std::uint64_t poisson(double mean) {
    double limit = std::exp(-mean);
    double prod = uniform_pos();
    std::uint64_t n = 0;
    while (prod > limit) {
      prod *= uniform_pos();
      ++n;
    }
    return n;
  }

  // Flat Dirichlet sample (uniform over the simplex) of dimension k >= 1.
  std::vector<double> dirichlet(std::size_t k) {
    std::vector<double> v(k);
    double total = 0.0;
    for (auto& x : v) {
      x = exponential();
      total += x;
    }
    for (auto& x : v) x /= total;
    return v;
  }

 private:
  SplitMix64 sm_;
};

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  SplitMix64 sm(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return sm.next();
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a_doubles(const std::vector<double>& v, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (double d : v) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace renyi::rng
