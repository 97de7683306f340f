#pragma once

// Conversions between library image types and cv::Mat. Internal.

#include <opencv2/core.hpp>

#include "textmark/image.hpp"

namespace textmark::detail {

inline cv::Mat to_mat(const Plane& plane) {
  cv::Mat m(plane.height(), plane.width(), CV_64F);
  std::copy(plane.data().begin(), plane.data().end(), m.ptr<double>());
  return m;
}

inline Plane from_mat(const cv::Mat& m) {
  cv::Mat d;
  m.convertTo(d, CV_64F);
  if (!d.isContinuous()) d = d.clone();
  Plane plane(d.cols, d.rows);
  std::copy(d.ptr<double>(), d.ptr<double>() + plane.size(), plane.data().begin());
  return plane;
}

// RGB order in, BGR Mat out (OpenCV convention).
inline cv::Mat to_bgr(const RgbImage& image) {
  cv::Mat m(image.height(), image.width(), CV_8UC3);
  const auto& src = image.data();
  auto* dst = m.ptr<std::uint8_t>();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    dst[i] = src[i + 2];
    dst[i + 1] = src[i + 1];
    dst[i + 2] = src[i];
  }
  return m;
}

inline RgbImage from_bgr(const cv::Mat& m) {
  cv::Mat c = m.isContinuous() ? m : m.clone();
  RgbImage image(c.cols, c.rows);
  auto& dst = image.data();
  const auto* src = c.ptr<std::uint8_t>();
  for (std::size_t i = 0; i < dst.size(); i += 3) {
    dst[i] = src[i + 2];
    dst[i + 1] = src[i + 1];
    dst[i + 2] = src[i];
  }
  return image;
}

}  // namespace textmark::detail
