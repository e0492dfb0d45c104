#include "rcubic/random.hpp"

namespace rcubic {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t substream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(substream),
                    static_cast<std::uint32_t>(substream >> 32),
                    0x72637562u};
  engine_.seed(seq);
}

}  // namespace rcubic
