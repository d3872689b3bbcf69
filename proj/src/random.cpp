#include "howmany/random.hpp"

namespace howmany {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream make_stream(std::uint64_t seed, std::uint64_t index) noexcept {
  return RandomStream(splitmix64(splitmix64(seed) ^ (index * 0x9E3779B97F4A7C15ULL + 1)));
}

}  // namespace howmany
