#include "textmark/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <opencv2/imgproc.hpp>

#include "cv_bridge.hpp"
#include "textmark/annulus.hpp"
#include "textmark/dft.hpp"
#include "textmark/keyed_rng.hpp"

namespace textmark {

namespace {

// Zero-mean, unit-variance noise with a 1/f^beta amplitude spectrum.
Plane pink_noise(Dims dims, double beta, KeyedStream& rng) {
  Plane white(dims.width, dims.height);
  for (auto& v : white.data()) v = rng.normal();
  Spectrum s = forward_dft(white);
  for (int v = 0; v < dims.height; ++v) {
    for (int u = 0; u < dims.width; ++u) {
      const double f = std::hypot(signed_frequency(u, dims.width), signed_frequency(v, dims.height));
      s.at(u, v) *= f > 0.0 ? std::pow(std::max(f, 1.0 / 512.0), -beta) : 0.0;
    }
  }
  Plane out = inverse_dft_checked(s).plane;
  double sum2 = 0.0;
  for (double x : out.data()) sum2 += x * x;
  const double norm = std::sqrt(sum2 / static_cast<double>(out.size()));
  for (auto& x : out.data()) x /= norm;
  return out;
}

cv::Vec3d random_color(KeyedStream& rng) {
  return {30 + 200 * rng.uniform(), 30 + 200 * rng.uniform(), 30 + 200 * rng.uniform()};
}

}  // namespace

RgbImage synthetic_scene(Dims dims, std::uint64_t seed) {
  KeyedStream rng(seed, Stream::Synthetic);
  const int w = dims.width;
  const int h = dims.height;
  cv::Mat canvas(h, w, CV_64FC3);

  // Sky/ground split with smooth vertical gradients.
  const double horizon = h * (0.3 + 0.4 * rng.uniform());
  const cv::Vec3d sky_top = random_color(rng), sky_bottom = random_color(rng);
  const cv::Vec3d ground_top = random_color(rng), ground_bottom = random_color(rng);
  for (int y = 0; y < h; ++y) {
    cv::Vec3d c;
    if (y < horizon) {
      const double t = y / std::max(1.0, horizon);
      c = sky_top * (1 - t) + sky_bottom * t;
    } else {
      const double t = (y - horizon) / std::max(1.0, h - horizon);
      c = ground_top * (1 - t) + ground_bottom * t;
    }
    for (int x = 0; x < w; ++x) canvas.at<cv::Vec3d>(y, x) = c;
  }

  // Ground texture: strong 1/f luminance detail below the horizon, weaker above.
  const Plane texture = pink_noise(dims, 0.9 + 0.4 * rng.uniform(), rng);
  const double ground_gain = 30 + 50 * rng.uniform();
  const double sky_gain = 6 + 14 * rng.uniform();
  for (int y = 0; y < h; ++y) {
    const double t = std::clamp((y - horizon) / 20.0 + 0.5, 0.0, 1.0);
    const double gain = sky_gain * (1 - t) + ground_gain * t;
    for (int x = 0; x < w; ++x) canvas.at<cv::Vec3d>(y, x) += cv::Vec3d::all(gain * texture.at(x, y));
  }

  // Objects with their own texture, composited through soft alpha masks.
  const int objects = 4 + static_cast<int>(rng.below(14));
  const Plane object_texture = pink_noise(dims, 0.8 + 0.5 * rng.uniform(), rng);
  for (int i = 0; i < objects; ++i) {
    cv::Mat alpha = cv::Mat::zeros(h, w, CV_64F);
    const cv::Point center(static_cast<int>(rng.uniform() * w), static_cast<int>(rng.uniform() * h));
    const double size = std::min(w, h) * (0.04 + 0.22 * rng.uniform());
    switch (rng.below(3)) {
      case 0:
        cv::ellipse(alpha, center, cv::Size(static_cast<int>(size), static_cast<int>(size * (0.4 + rng.uniform()))),
                    180 * rng.uniform(), 0, 360, cv::Scalar(1.0), cv::FILLED, cv::LINE_AA);
        break;
      case 1: {
        const int hw = static_cast<int>(size * (0.3 + rng.uniform()));
        const int hh = static_cast<int>(size * (0.3 + rng.uniform()));
        cv::rectangle(alpha, center - cv::Point(hw, hh), center + cv::Point(hw, hh), cv::Scalar(1.0), cv::FILLED,
                      cv::LINE_AA);
        break;
      }
      default: {
        std::vector<cv::Point> poly;
        const int corners = 3 + static_cast<int>(rng.below(5));
        for (int k = 0; k < corners; ++k) {
          const double a = 2 * M_PI * (k + 0.6 * rng.uniform()) / corners;
          const double r = size * (0.5 + 0.7 * rng.uniform());
          poly.emplace_back(center.x + static_cast<int>(r * std::cos(a)), center.y + static_cast<int>(r * std::sin(a)));
        }
        cv::fillPoly(alpha, std::vector<std::vector<cv::Point>>{poly}, cv::Scalar(1.0), cv::LINE_AA);
      }
    }
    const double edge = 0.6 + 3.0 * rng.uniform();
    cv::GaussianBlur(alpha, alpha, cv::Size(0, 0), edge);
    const cv::Vec3d base = random_color(rng);
    const double gain = 15 + 50 * rng.uniform();
    const double shade = 0.3 * rng.uniform();
    for (int y = 0; y < h; ++y) {
      const double* a = alpha.ptr<double>(y);
      cv::Vec3d* px = canvas.ptr<cv::Vec3d>(y);
      for (int x = 0; x < w; ++x) {
        if (a[x] <= 0.0) continue;
        const double light = 1.0 - shade * (y - center.y) / std::max(1.0, size);
        const cv::Vec3d c = base * light + cv::Vec3d::all(gain * object_texture.at(x, y));
        px[x] = px[x] * (1 - a[x]) + c * a[x];
      }
    }
  }

  // Defocus part of the frame, as in shallow depth-of-field renders.
  if (rng.uniform() < 0.6) {
    cv::Mat blurred;
    cv::GaussianBlur(canvas, blurred, cv::Size(0, 0), 2 + 6 * rng.uniform());
    const double split = h * (0.2 + 0.5 * rng.uniform());
    const bool top = rng.uniform() < 0.5;
    for (int y = 0; y < h; ++y) {
      const double t = std::clamp((top ? split - y : y - split) / 40.0, 0.0, 1.0);
      if (t <= 0.0) continue;
      for (int x = 0; x < w; ++x)
        canvas.at<cv::Vec3d>(y, x) = canvas.at<cv::Vec3d>(y, x) * (1 - t) + blurred.at<cv::Vec3d>(y, x) * t;
    }
  }
  cv::GaussianBlur(canvas, canvas, cv::Size(0, 0), 0.5);

  RgbImage image(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const cv::Vec3d c = canvas.at<cv::Vec3d>(y, x);
      std::uint8_t* px = image.pixel(x, y);
      for (int k = 0; k < 3; ++k) px[k] = quantize_sample(c[k]);
    }
  }
  return image;
}

std::string synthetic_caption(std::uint64_t seed, std::size_t length) {
  static const std::array<const char*, 48> words = {
      "a",        "the",     "of",       "with",      "and",      "in",     "near",    "under",
      "bright",   "quiet",   "ancient",  "glass",     "stone",    "golden", "misty",   "crowded",
      "city",     "forest",  "river",    "mountain",  "street",   "garden", "harbor",  "valley",
      "building", "tower",   "bridge",   "tree",      "boat",     "woman",  "child",   "dog",
      "sunlight", "clouds",  "shadows",  "reflects", "stands",   "flows",  "rises",   "sleeps",
      "warm",     "soft",    "dramatic", "evening",  "morning",  "light",  "sky",     "water"};
  KeyedStream rng(seed, Stream::Synthetic);
  std::string out;
  bool sentence_start = true;
  while (out.size() < length) {
    std::string word = words[rng.below(words.size())];
    if (sentence_start) word[0] = static_cast<char>(word[0] - 'a' + 'A');
    out += word;
    sentence_start = false;
    const double r = rng.uniform();
    if (r < 0.08) {
      out += ". ";
      sentence_start = true;
    } else if (r < 0.14) {
      out += ", ";
    } else {
      out += ' ';
    }
  }
  out.resize(length);
  if (length > 0) out.back() = '.';
  return out;
}

}  // namespace textmark
