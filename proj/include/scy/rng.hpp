#pragma once

#include <cstdint>

#include "rational.hpp"

namespace scy {

// splitmix64; standard-library distributions are not byte-stable across
// implementations, so every draw is derived from the raw 64-bit stream.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // inclusive bounds
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  Rational rational(int max_num, int max_den) {
    return Rational(uniform(-max_num, max_num), uniform(1, max_den));
  }

  GaussRat gauss(int max_num = 3, int max_den = 3) {
    return GaussRat(rational(max_num, max_den), rational(max_num, max_den));
  }

  GaussRat gauss_real(int max_num = 3, int max_den = 3) {
    return GaussRat(rational(max_num, max_den));
  }

private:
  uint64_t state_;
};

} // namespace scy
