#pragma once

#include <cstdint>
#include <random>

namespace ballbeam {

// Uniform doubles straight from the generator's bits so that sampled values
// do not depend on the standard library's distribution internals.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double a, double b) {
  return a + (b - a) * uniform01(g);
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
  return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace ballbeam
