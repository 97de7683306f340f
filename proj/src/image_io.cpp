#include "textmark/image_io.hpp"

#include <opencv2/imgcodecs.hpp>

#include "cv_bridge.hpp"
#include "textmark/errors.hpp"

namespace textmark {

RgbImage load_image(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (m.empty()) throw IoError("cannot read image " + path.string());
  return detail::from_bgr(m);
}

void save_image(const RgbImage& image, const std::filesystem::path& path) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), detail::to_bgr(image));
  } catch (const cv::Exception& e) {
    throw IoError("cannot write image " + path.string() + ": " + e.what());
  }
  if (!ok) throw IoError("cannot write image " + path.string());
}

}  // namespace textmark
