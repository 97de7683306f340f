#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "textmark/bits.hpp"

namespace textmark {

inline constexpr double kLlrClamp = 50.0;

// Parallel-concatenated code built from two identical recursive systematic
// convolutional constituents. Only the first constituent is terminated.
struct TurboConfig {
  unsigned feedback_poly = 013;     // octal, g0 = 1 + D^2 + D^3
  unsigned feedforward_poly = 015;  // octal, g1 = 1 + D + D^3
  int constraint_length = 4;
  int iterations = 8;
  std::size_t info_length = 0;   // message bits K entering the encoder
  std::size_t coded_length = 0;  // L_c after rate matching
  int puncture_pattern = 0;      // 0: uniform parity puncturing / cyclic repetition
  double extrinsic_scale = 0.7;
  double max_rate = 0.95;

  int memory() const { return constraint_length - 1; }
  // Systematic + both parities + first-constituent tail (systematic and parity).
  std::size_t mother_length() const { return 3 * info_length + 2 * static_cast<std::size_t>(memory()); }
  double effective_rate() const {
    return coded_length == 0 ? 0.0 : static_cast<double>(info_length) / static_cast<double>(coded_length);
  }
};

// Throws RateError if the configuration cannot be rate matched.
void validate(const TurboConfig& cfg);

std::vector<std::uint32_t> make_interleaver(std::uint64_t seed, std::size_t n);

// Unpunctured mother codeword, laid out as [sys(K+m) | p1(K+m) | p2(K)].
BitVector turbo_encode_mother(const BitVector& message, const TurboConfig& cfg,
                              std::uint64_t seed);

BitVector turbo_encode(const BitVector& message, const TurboConfig& cfg, std::uint64_t seed);

// Positive LLR means bit 0. Inputs are clamped to +-kLlrClamp.
struct TurboDecodeResult {
  BitVector bits;
  std::vector<double> posterior;  // per message bit
};

TurboDecodeResult turbo_decode_soft(std::span<const double> llrs, const TurboConfig& cfg,
                                    std::uint64_t seed);

BitVector turbo_decode(std::span<const double> llrs, const TurboConfig& cfg, std::uint64_t seed);

// Positions of the mother codeword transmitted at each coded index (length L_c).
std::vector<std::uint32_t> rate_matching_map(const TurboConfig& cfg);

}  // namespace textmark
