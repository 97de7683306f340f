#include "textmark/image.hpp"

#include <cmath>

namespace textmark {

std::uint8_t quantize_sample(double v) noexcept {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

YCbCr rgb_to_ycbcr(const RgbImage& image) {
  YCbCr out{Plane(image.width(), image.height()), Plane(image.width(), image.height()),
            Plane(image.width(), image.height())};
  const auto& px = image.data();
  auto& y = out.y.data();
  auto& cb = out.cb.data();
  auto& cr = out.cr.data();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = px[3 * i];
    const double g = px[3 * i + 1];
    const double b = px[3 * i + 2];
    y[i] = 0.299 * r + 0.587 * g + 0.114 * b;
    cb[i] = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
    cr[i] = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
  }
  return out;
}

Plane luminance(const RgbImage& image) {
  Plane y(image.width(), image.height());
  const auto& px = image.data();
  auto& out = y.data();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 0.299 * px[3 * i] + 0.587 * px[3 * i + 1] + 0.114 * px[3 * i + 2];
  return y;
}

RgbImage ycbcr_to_rgb(const Plane& y, const Plane& cb, const Plane& cr) {
  RgbImage image(y.width(), y.height());
  auto& px = image.data();
  const auto& yy = y.data();
  const auto& cbb = cb.data();
  const auto& crr = cr.data();
  for (std::size_t i = 0; i < yy.size(); ++i) {
    const double u = cbb[i] - 128.0;
    const double v = crr[i] - 128.0;
    px[3 * i] = quantize_sample(yy[i] + 1.402 * v);
    px[3 * i + 1] = quantize_sample(yy[i] - 0.344136 * u - 0.714136 * v);
    px[3 * i + 2] = quantize_sample(yy[i] + 1.772 * u);
  }
  return image;
}

}  // namespace textmark
