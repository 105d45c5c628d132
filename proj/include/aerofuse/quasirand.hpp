#pragma once

#include <cstdint>

namespace aerofuse {

// Radical inverse of `index` in the given base: mirror the base-b digits of
// the index around the radix point.
inline double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double digit_weight = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += digit_weight * static_cast<double>(index % base);
    index /= base;
    digit_weight /= static_cast<double>(base);
  }
  return result;
}

// Halton sequence element; index >= 1 keeps the output strictly inside (0,1).
inline double halton(std::uint64_t index, unsigned base) {
  return radical_inverse(index, base);
}

}  // namespace aerofuse
