#pragma once

#include <cstdint>
#include <string>

#include "textmark/image.hpp"

namespace textmark {

// Procedural scene with natural-image statistics: graded sky/ground, 1/f
// textures, soft-edged objects and defocused regions. Deterministic per seed.
RgbImage synthetic_scene(Dims dims, std::uint64_t seed);

// Caption-like English text of exactly `length` characters. Mixed case;
// every character folds onto the canonical charset without blanking.
std::string synthetic_caption(std::uint64_t seed, std::size_t length);

}  // namespace textmark
