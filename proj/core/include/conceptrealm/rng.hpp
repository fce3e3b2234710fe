#pragma once

#include <cstdint>
#include <string_view>

namespace conceptrealm {

// SplitMix64 (Steele, Lea & Flood, OOPSLA 2014). 64-bit state, one
// multiply-xor-shift finalizer per draw. This is the only random number
// generator in the project: every sampler owns an explicit stream, nothing
// reads wall-clock entropy, and equal seeds give bit-equal runs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 mantissa bits
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, n); n must be > 0
  std::uint32_t next_below(std::uint32_t n) {
    auto idx = static_cast<std::uint32_t>(next_double() * n);
    return idx >= n ? n - 1 : idx;
  }

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Derives an independent child stream from (seed, key). Used for the
// per-document streams of the Gibbs samplers: the stream depends on the
// document id, not on iteration order, so sweeps over doc_id-sorted
// corpora are invariant under input permutation.
SplitMix64 stream_for(std::uint64_t seed, std::string_view key);

// Same derivation for integer keys (per-K sweep seeds and the like).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

}  // namespace conceptrealm
