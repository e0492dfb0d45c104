#pragma once

#include <cstddef>
#include <span>

namespace rcubic {

/// Pairwise (cascade) summation. The grouping depends only on the length of
/// the input, so the result is reproducible bit for bit.
inline double pairwise_sum(std::span<const double> values) noexcept {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace rcubic
