#include "conceptrealm/rng.hpp"

namespace conceptrealm {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  // boost::hash_combine-style mixing, then one finalizer round
  std::uint64_t s = seed ^ (key + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  SplitMix64 g(s);
  return g.next();
}

SplitMix64 stream_for(std::uint64_t seed, std::string_view key) {
  return SplitMix64(derive_seed(seed, fnv1a64(key)));
}

}  // namespace conceptrealm
