#include "textmark/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "textmark/errors.hpp"

namespace textmark {

double ber(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw DimensionError("BER needs equal-length bit strings");
  if (a.empty()) return 0.0;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < a.size(); ++i) errors += ((a[i] ^ b[i]) & 1u);
  return 100.0 * static_cast<double>(errors) / static_cast<double>(a.size());
}

namespace {

double psnr_from_mse(double mse) {
  if (mse <= 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

}  // namespace

double psnr(const RgbImage& x, const RgbImage& y) {
  if (x.dims() != y.dims()) throw DimensionError("PSNR needs equal dimensions");
  const auto& a = x.data();
  const auto& b = y.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sum += d * d;
  }
  return psnr_from_mse(a.empty() ? 0.0 : sum / static_cast<double>(a.size()));
}

double psnr(const Plane& x, const Plane& y) {
  if (x.dims() != y.dims()) throw DimensionError("PSNR needs equal dimensions");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x.data()[i] - y.data()[i];
    sum += d * d;
  }
  return psnr_from_mse(x.size() ? sum / static_cast<double>(x.size()) : 0.0);
}

double ssim(const Plane& x, const Plane& y) {
  if (x.dims() != y.dims()) throw DimensionError("SSIM needs equal dimensions");
  constexpr int kWin = 8;
  constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  const int w = x.width();
  const int h = x.height();
  if (w < kWin || h < kWin) throw DimensionError("SSIM needs at least 8x8 pixels");

  const std::size_t stride = static_cast<std::size_t>(w) + 1;
  std::vector<double> sx(stride * (h + 1), 0.0), sy(sx.size(), 0.0), sxx(sx.size(), 0.0),
      syy(sx.size(), 0.0), sxy(sx.size(), 0.0);
  for (int r = 0; r < h; ++r) {
    double rx = 0, ry = 0, rxx = 0, ryy = 0, rxy = 0;
    for (int c = 0; c < w; ++c) {
      const double a = x.at(c, r);
      const double b = y.at(c, r);
      rx += a;
      ry += b;
      rxx += a * a;
      ryy += b * b;
      rxy += a * b;
      const std::size_t i = (r + 1) * stride + c + 1;
      sx[i] = sx[i - stride] + rx;
      sy[i] = sy[i - stride] + ry;
      sxx[i] = sxx[i - stride] + rxx;
      syy[i] = syy[i - stride] + ryy;
      sxy[i] = sxy[i - stride] + rxy;
    }
  }
  auto box = [&](const std::vector<double>& s, int c, int r) {
    const std::size_t c1i = c + kWin, r1 = r + kWin;
    return s[r1 * stride + c1i] - s[r * stride + c1i] - s[r1 * stride + c] + s[r * stride + c];
  };
  constexpr double n = kWin * kWin;
  double total = 0.0;
  for (int r = 0; r + kWin <= h; ++r) {
    for (int c = 0; c + kWin <= w; ++c) {
      const double mx = box(sx, c, r) / n;
      const double my = box(sy, c, r) / n;
      const double vx = std::max(0.0, box(sxx, c, r) / n - mx * mx);
      const double vy = std::max(0.0, box(syy, c, r) / n - my * my);
      const double cxy = box(sxy, c, r) / n - mx * my;
      total += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
  }
  return total / (static_cast<double>(w - kWin + 1) * (h - kWin + 1));
}

double ssim(const RgbImage& x, const RgbImage& y) {
  if (x.dims() != y.dims()) throw DimensionError("SSIM needs equal dimensions");
  return ssim(luminance(x), luminance(y));
}

}  // namespace textmark
