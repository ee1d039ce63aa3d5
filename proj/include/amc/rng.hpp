#pragma once

// Counter-based sampler: draw k of stream `seed` is splitmix64(seed, k), so a
// sequence is reproducible on every platform and independent of call order
// across streams.

#include "amc/rat.hpp"

#include <cstdint>

namespace amc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() { return splitmix64(key_ + counter_++); }

  /// Uniform in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  /// Numerator in [-h, h], denominator in [1, h].
  Rat small_rat(long h) {
    const long num = uniform(-h, h);
    const long den = uniform(1, h);
    return Rat(num, den);
  }

  Rat nonzero_rat(long h) {
    for (;;) {
      Rat r = small_rat(h);
      if (r != 0) return r;
    }
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace amc
