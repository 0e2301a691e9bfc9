#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gentle/error.hpp"

namespace gentle {

/// SplitMix64 (Steele, Lea, Flood). Every random instance in the library is drawn
/// from this stream so other implementations can reproduce it bit for bit:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Bounded draws use rejection: with t = (2^64 - b) mod b, redraw while z < t,
/// then return z mod b.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("below(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t z = next();
      if (z >= threshold) return z % bound;
    }
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  /// Fisher-Yates from the back: for i = n-1 down to 1 swap v[i] with v[below(i+1)].
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::uint64_t state_;
};

}  // namespace gentle
