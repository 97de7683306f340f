#pragma once

#include <cstdint>
#include <vector>

namespace textmark {

// Independent keyed streams. Each consumer of key material draws from its own
// stream so that changing one parameter never perturbs another's randomness.
enum class Stream : std::uint64_t {
  Annulus = 1,
  Interleaver = 2,
  HadamardRows = 3,
  SignMask = 4,
  Coefficients = 5,
  Pilots = 6,
  Splice = 7,
  Noise = 8,
  Synthetic = 9,
};

std::uint64_t mix64(std::uint64_t z) noexcept;

// Counter-based generator: output i is mix64(stream_key + (i + 1) * golden),
// where stream_key = mix64(seed ^ mix64(stream + golden)). This is SplitMix64
// keyed per (seed, stream), so any implementation reproduces it bit-exactly.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::uint64_t stream) noexcept;
  KeyedStream(std::uint64_t seed, Stream stream) noexcept
      : KeyedStream(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t next() noexcept;
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  // Unbiased integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  // Standard normal via Box-Muller (both outputs used).
  double normal() noexcept;
  int sign() noexcept { return (next() >> 63) ? -1 : 1; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Fisher-Yates shuffle of 0..n-1 driven by the given stream.
std::vector<std::uint32_t> keyed_permutation(std::uint64_t seed, Stream stream, std::size_t n);

// First k entries of a keyed shuffle of 0..n-1 (an injective map into [0, n)).
std::vector<std::uint32_t> keyed_sample(std::uint64_t seed, Stream stream, std::size_t n,
                                        std::size_t k);

}  // namespace textmark
