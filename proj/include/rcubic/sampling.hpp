#pragma once

#include <cstddef>
#include <cstdint>

namespace rcubic {

/// Samples are drawn in fixed blocks; block k always uses substream k of the
/// run seed. Every kernel (serial or parallel) walks the same blocks, which
/// is what makes results independent of the worker count.
inline constexpr std::size_t kSamplesPerBlock = std::size_t{1} << 15;

struct SampleBlock {
  std::uint64_t substream;
  std::size_t begin;
  std::size_t end;
};

inline std::size_t block_count(std::size_t n) noexcept {
  return (n + kSamplesPerBlock - 1) / kSamplesPerBlock;
}

inline SampleBlock sample_block(std::size_t n, std::size_t k) noexcept {
  const std::size_t begin = k * kSamplesPerBlock;
  const std::size_t end = begin + kSamplesPerBlock < n ? begin + kSamplesPerBlock : n;
  return {static_cast<std::uint64_t>(k), begin, end};
}

}  // namespace rcubic
