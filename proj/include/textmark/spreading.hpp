#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "textmark/bits.hpp"

namespace textmark {

// Sylvester Hadamard matrix, row-major order x order. Throws OrderError if
// order is not a power of two.
std::vector<std::vector<int>> hadamard(std::size_t order);

// Entry (row, col) of the Sylvester matrix without materializing it.
inline int hadamard_entry(std::uint32_t row, std::uint32_t col) noexcept {
  return (__builtin_popcount(row & col) & 1) ? -1 : 1;
}

bool is_power_of_two(std::size_t n) noexcept;

// Keyed assignment of coded bits to orthogonal chip vectors over host
// coefficients. Blocks [0, coded_length) carry data; the trailing
// pilot_blocks blocks carry known keyed bits used for resynchronization.
struct SpreadingPlan {
  std::size_t spreading = 0;
  std::size_t coded_length = 0;
  std::size_t pilot_blocks = 0;
  std::size_t host_count = 0;
  std::vector<std::uint32_t> rows;          // per block
  std::vector<std::int8_t> signs;           // per chip
  std::vector<std::uint32_t> coefficients;  // per chip, index into the host set
  BitVector pilot_bits;

  std::size_t n_chips() const { return coded_length * spreading; }
  std::size_t block_count() const { return coded_length + pilot_blocks; }
  std::size_t total_chips() const { return block_count() * spreading; }

  // Unit-norm chip value for chip k of block j.
  double chip(std::size_t block, std::size_t k) const;
};

// Throws OrderError if s is not a power of two, CapacityError if the plan
// (including pilots) does not fit in host_count.
SpreadingPlan build_plan(std::uint64_t seed, std::size_t coded_length, std::size_t spreading,
                         std::size_t host_count, std::size_t pilot_blocks = 0);

struct EmbedTargets {
  double strength = 1.0;  // gamma; target projection T = gamma * sqrt(s)
  double max_step = 0.0;  // D_max, cap on |T*b - p| per block
  bool informed = true;   // false: pure additive spreading, host ignored
};

// Additive deltas (length host.size()) that move each block's weighted
// projection towards b*T. Pilot blocks are embedded after the data blocks.
std::vector<double> spread_embed_targets(const BitVector& coded, const SpreadingPlan& plan,
                                         std::span<const double> host,
                                         std::span<const double> weights,
                                         const EmbedTargets& targets);

// Weighted projection of one block.
double block_projection(std::span<const double> values, const SpreadingPlan& plan,
                        std::span<const double> weights, std::size_t block);

struct Projection {
  std::vector<double> values;  // per data block
  double sigma = 1.0;          // robust noise scale, > 0
};

Projection project(std::span<const double> received, const SpreadingPlan& plan,
                   std::span<const double> weights);

// Median absolute deviation of |values| scaled by 1.4826, floored at 1e-6.
double robust_scale(std::span<const double> values);

struct SoftWord {
  std::vector<double> llrs;  // positive means bit 0
  Projection projection;
};

// LLR_j = 2 T p_j / sigma^2, clamped to +-kLlrClamp.
SoftWord despread(std::span<const double> received, const SpreadingPlan& plan,
                  std::span<const double> weights, double target);

// Same, with T estimated as the mean |p_j| actually received. The mask and
// the channel shrink the correlation well below the embedding target, and the
// nominal T would push most LLRs into the clamp.
SoftWord despread(std::span<const double> received, const SpreadingPlan& plan,
                  std::span<const double> weights);

double received_target(const Projection& projection);

// Normalized correlation between the received weighted values on the pilot
// chips and the known pilot chip pattern. Roughly N(0, 1/n) without a mark.
double pilot_correlation(std::span<const double> pilot_values, const SpreadingPlan& plan,
                         std::span<const double> pilot_weights);

}  // namespace textmark
