#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace onefact {

// Derives an independent stream seed from a base seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// mt19937_64 wrapper with self-contained draw/shuffle routines.
// std::uniform_int_distribution is implementation-defined, which would break
// byte-identical reproducibility of seeded runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound), bound >= 1. Unbiased via rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      std::uint64_t r = eng_();
      if (r >= threshold) return r % bound;
    }
  }

  int index(std::size_t size) { return static_cast<int>(below(size)); }

  bool coin() { return (eng_() >> 63) != 0; }

  double unit() { return (eng_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

  // k distinct values from [0, n), in random order.
  std::vector<int> sample(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i)
      std::swap(pool[i], pool[i + static_cast<int>(below(n - i))]);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace onefact
