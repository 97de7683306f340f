#include "textmark/keyed_rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace textmark {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

KeyedStream::KeyedStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(seed ^ mix64(stream + kGolden))) {}

std::uint64_t KeyedStream::next() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double KeyedStream::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t KeyedStream::below(std::uint64_t bound) noexcept {
  // Rejection on the top of the range keeps the result unbiased.
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

double KeyedStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::vector<std::uint32_t> keyed_permutation(std::uint64_t seed, Stream stream, std::size_t n) {
  return keyed_sample(seed, stream, n, n);
}

std::vector<std::uint32_t> keyed_sample(std::uint64_t seed, Stream stream, std::size_t n,
                                        std::size_t k) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  KeyedStream rng(seed, stream);
  const std::size_t steps = std::min(k, n);
  for (std::size_t i = 0; i < steps && i + 1 < n; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(perm[i], perm[j]);
  }
  perm.resize(steps);
  return perm;
}

}  // namespace textmark
