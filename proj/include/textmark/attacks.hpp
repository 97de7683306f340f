#pragma once

#include <cstdint>
#include <string>

#include "textmark/image.hpp"

namespace textmark {

enum class AttackKind { Jpeg, Resize, Rotate, Crop, Noise, Splice };

const char* to_string(AttackKind kind);

// One processing step of the benchmark.
// jpeg: QF in [1, 100]; resize: scale in (0, 4]; rotate: degrees in [-45, 45];
// crop: removed area % in [0, 90]; noise: sigma >= 0; splice: replaced % in [0, 50].
struct AttackSpec {
  AttackKind kind = AttackKind::Jpeg;
  double param = 0.0;
  std::uint64_t seed = 0;

  // "jpeg:70", "rotate:5", "noise:20@7" (optional seed after '@').
  static AttackSpec parse(const std::string& text);
  std::string label() const;
};

void validate(const AttackSpec& spec);

RgbImage attack_jpeg(const RgbImage& image, int quality);
RgbImage attack_resize(const RgbImage& image, double scale);
RgbImage attack_rotate(const RgbImage& image, double degrees);
RgbImage attack_crop_central(const RgbImage& image, double removed_pct);
RgbImage attack_noise(const RgbImage& image, double sigma, std::uint64_t seed);

// Keyed union of random rectangles and ellipses covering replaced_pct +- 1 %
// of the area; true marks pixels taken from the unmarked original.
std::vector<std::uint8_t> splice_mask(Dims dims, double replaced_pct, std::uint64_t seed);
RgbImage attack_splice(const RgbImage& watermarked, const RgbImage& original, double replaced_pct,
                       std::uint64_t seed);

// Dispatch on spec.kind. Splicing needs the unmarked original.
RgbImage apply_attack(const AttackSpec& spec, const RgbImage& watermarked,
                      const RgbImage* original = nullptr);

}  // namespace textmark
