#pragma once

#include <cstdint>
#include <vector>

namespace textmark {

struct Dims {
  int width = 0;
  int height = 0;
  friend bool operator==(const Dims&, const Dims&) = default;
};

// Real-valued single-channel plane, row-major.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0)
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  Dims dims() const { return {width_, height_}; }
  std::size_t size() const { return data_.size(); }

  double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// 8-bit RGB, interleaved, row-major.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height)
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height * 3, 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  Dims dims() const { return {width_, height_}; }
  bool empty() const { return data_.empty(); }

  std::uint8_t* pixel(int x, int y) { return &data_[(static_cast<std::size_t>(y) * width_ + x) * 3]; }
  const std::uint8_t* pixel(int x, int y) const {
    return &data_[(static_cast<std::size_t>(y) * width_ + x) * 3];
  }

  std::vector<std::uint8_t>& data() { return data_; }
  const std::vector<std::uint8_t>& data() const { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

struct YCbCr {
  Plane y, cb, cr;
};

// BT.601 full range.
YCbCr rgb_to_ycbcr(const RgbImage& image);
Plane luminance(const RgbImage& image);

// Rounds half away from zero and clamps to [0, 255].
RgbImage ycbcr_to_rgb(const Plane& y, const Plane& cb, const Plane& cr);

std::uint8_t quantize_sample(double v) noexcept;

}  // namespace textmark
