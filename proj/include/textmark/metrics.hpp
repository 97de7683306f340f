#pragma once

#include "textmark/bits.hpp"
#include "textmark/image.hpp"

namespace textmark {

inline constexpr double kPsnrCap = 99.0;

// 100 * hamming(a, b) / |a|. Throws DimensionError on length mismatch.
double ber(const BitVector& a, const BitVector& b);

// Over all RGB samples with MAX = 255; identical images give kPsnrCap.
double psnr(const RgbImage& x, const RgbImage& y);
double psnr(const Plane& x, const Plane& y);

// Mean SSIM on BT.601 luminance over sliding 8x8 windows, standard constants.
double ssim(const RgbImage& x, const RgbImage& y);
double ssim(const Plane& x, const Plane& y);

}  // namespace textmark
