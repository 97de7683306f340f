#include "textmark/attacks.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <numbers>
#include <vector>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "cv_bridge.hpp"
#include "textmark/errors.hpp"
#include "textmark/keyed_rng.hpp"

namespace textmark {

const char* to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::Jpeg: return "jpeg";
    case AttackKind::Resize: return "resize";
    case AttackKind::Rotate: return "rotate";
    case AttackKind::Crop: return "crop";
    case AttackKind::Noise: return "noise";
    case AttackKind::Splice: return "splice";
  }
  return "?";
}

AttackSpec AttackSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParamError("attack spec must look like kind:param, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  AttackSpec spec;
  if (kind == "jpeg") spec.kind = AttackKind::Jpeg;
  else if (kind == "resize") spec.kind = AttackKind::Resize;
  else if (kind == "rotate") spec.kind = AttackKind::Rotate;
  else if (kind == "crop") spec.kind = AttackKind::Crop;
  else if (kind == "noise") spec.kind = AttackKind::Noise;
  else if (kind == "splice") spec.kind = AttackKind::Splice;
  else throw ParamError("unknown attack kind '" + kind + "'");
  try {
    if (const auto at = rest.find('@'); at != std::string::npos) {
      spec.seed = std::stoull(rest.substr(at + 1));
      rest.resize(at);
    }
    std::size_t used = 0;
    spec.param = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(rest);
  } catch (const std::logic_error&) {
    throw ParamError("bad attack parameter in '" + text + "'");
  }
  validate(spec);
  return spec;
}

std::string AttackSpec::label() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%g", to_string(kind), param);
  return buf;
}

void validate(const AttackSpec& spec) {
  const double p = spec.param;
  bool ok = std::isfinite(p);
  switch (spec.kind) {
    case AttackKind::Jpeg: ok = ok && p >= 1 && p <= 100 && p == std::floor(p); break;
    case AttackKind::Resize: ok = ok && p > 0 && p <= 4; break;
    case AttackKind::Rotate: ok = ok && p >= -45 && p <= 45; break;
    case AttackKind::Crop: ok = ok && p >= 0 && p <= 90; break;
    case AttackKind::Noise: ok = ok && p >= 0; break;
    case AttackKind::Splice: ok = ok && p >= 0 && p <= 50; break;
  }
  if (!ok) throw ParamError("parameter out of range for " + spec.label());
}

RgbImage attack_jpeg(const RgbImage& image, int quality) {
  validate({AttackKind::Jpeg, static_cast<double>(quality), 0});
  std::vector<std::uint8_t> buffer;
  cv::imencode(".jpg", detail::to_bgr(image), buffer, {cv::IMWRITE_JPEG_QUALITY, quality});
  return detail::from_bgr(cv::imdecode(buffer, cv::IMREAD_COLOR));
}

RgbImage attack_resize(const RgbImage& image, double scale) {
  validate({AttackKind::Resize, scale, 0});
  const int w = std::max(1, static_cast<int>(std::lround(image.width() * scale)));
  const int h = std::max(1, static_cast<int>(std::lround(image.height() * scale)));
  if (w == image.width() && h == image.height()) return image;
  cv::Mat out;
  cv::resize(detail::to_bgr(image), out, cv::Size(w, h), 0, 0, cv::INTER_CUBIC);
  return detail::from_bgr(out);
}

RgbImage attack_rotate(const RgbImage& image, double degrees) {
  validate({AttackKind::Rotate, degrees, 0});
  if (degrees == 0.0) return image;
  const cv::Point2f center(static_cast<float>((image.width() - 1) / 2.0),
                           static_cast<float>((image.height() - 1) / 2.0));
  cv::Mat out;
  cv::warpAffine(detail::to_bgr(image), out, cv::getRotationMatrix2D(center, degrees, 1.0),
                 cv::Size(image.width(), image.height()), cv::INTER_CUBIC, cv::BORDER_REPLICATE);
  return detail::from_bgr(out);
}

RgbImage attack_crop_central(const RgbImage& image, double removed_pct) {
  validate({AttackKind::Crop, removed_pct, 0});
  const double side = std::sqrt(1.0 - removed_pct / 100.0);
  const int w = std::max(1, static_cast<int>(std::lround(image.width() * side)));
  const int h = std::max(1, static_cast<int>(std::lround(image.height() * side)));
  const int x0 = (image.width() - w) / 2;
  const int y0 = (image.height() - h) / 2;
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y)
    std::copy_n(image.pixel(x0, y0 + y), static_cast<std::size_t>(w) * 3, out.pixel(0, y));
  return out;
}

RgbImage attack_noise(const RgbImage& image, double sigma, std::uint64_t seed) {
  validate({AttackKind::Noise, sigma, seed});
  if (sigma == 0.0) return image;
  KeyedStream rng(seed, Stream::Noise);
  RgbImage out = image;
  for (auto& v : out.data()) {
    const double x = v + sigma * rng.normal();
    v = static_cast<std::uint8_t>(std::clamp(std::floor(x + 0.5), 0.0, 255.0));
  }
  return out;
}

std::vector<std::uint8_t> splice_mask(Dims dims, double replaced_pct, std::uint64_t seed) {
  validate({AttackKind::Splice, replaced_pct, seed});
  const std::size_t total = static_cast<std::size_t>(dims.width) * dims.height;
  std::vector<std::uint8_t> mask(total, 0);
  const double target = replaced_pct / 100.0 * static_cast<double>(total);
  const double slack = 0.005 * static_cast<double>(total);
  if (target <= 0.0) return mask;

  KeyedStream rng(seed, Stream::Splice);
  double covered = 0.0;
  std::vector<std::size_t> fresh;
  for (int attempt = 0; attempt < 20000 && covered < target - slack; ++attempt) {
    const double remaining = target - covered;
    const double area = std::min(remaining, target / 3.0) * (0.5 + 0.5 * rng.uniform());
    const double aspect = std::exp(1.4 * rng.uniform() - 0.7);
    const bool ellipse = rng.uniform() < 0.5;
    const double cx = rng.uniform() * dims.width;
    const double cy = rng.uniform() * dims.height;
    double rx, ry;
    if (ellipse) {
      rx = std::sqrt(area * aspect / std::numbers::pi);
      ry = area / (std::numbers::pi * rx);
    } else {
      rx = 0.5 * std::sqrt(area * aspect);
      ry = 0.25 * area / rx;
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - rx)));
    const int x1 = std::min(dims.width - 1, static_cast<int>(std::ceil(cx + rx)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - ry)));
    const int y1 = std::min(dims.height - 1, static_cast<int>(std::ceil(cy + ry)));
    fresh.clear();
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = (x + 0.5 - cx) / rx;
        const double dy = (y + 0.5 - cy) / ry;
        const bool inside = ellipse ? (dx * dx + dy * dy <= 1.0) : (std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0);
        const std::size_t i = static_cast<std::size_t>(y) * dims.width + x;
        if (inside && !mask[i]) fresh.push_back(i);
      }
    }
    if (covered + static_cast<double>(fresh.size()) > target + slack) continue;
    for (auto i : fresh) mask[i] = 1;
    covered += static_cast<double>(fresh.size());
  }
  return mask;
}

RgbImage attack_splice(const RgbImage& watermarked, const RgbImage& original, double replaced_pct,
                       std::uint64_t seed) {
  if (watermarked.dims() != original.dims())
    throw DimensionError("splicing needs the watermarked and original images at the same size");
  const auto mask = splice_mask(watermarked.dims(), replaced_pct, seed);
  RgbImage out = watermarked;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) std::copy_n(&original.data()[3 * i], 3, &out.data()[3 * i]);
  return out;
}

RgbImage apply_attack(const AttackSpec& spec, const RgbImage& watermarked, const RgbImage* original) {
  validate(spec);
  switch (spec.kind) {
    case AttackKind::Jpeg: return attack_jpeg(watermarked, static_cast<int>(spec.param));
    case AttackKind::Resize: return attack_resize(watermarked, spec.param);
    case AttackKind::Rotate: return attack_rotate(watermarked, spec.param);
    case AttackKind::Crop: return attack_crop_central(watermarked, spec.param);
    case AttackKind::Noise: return attack_noise(watermarked, spec.param, spec.seed);
    case AttackKind::Splice:
      if (!original) throw ParamError("splicing needs the unmarked original image");
      return attack_splice(watermarked, *original, spec.param, spec.seed);
  }
  throw ParamError("unknown attack");
}

}  // namespace textmark
