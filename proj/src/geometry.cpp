#include "textmark/geometry.hpp"

#include <opencv2/imgproc.hpp>

#include "cv_bridge.hpp"
#include "textmark/errors.hpp"

namespace textmark {

Plane resize_plane(const Plane& plane, Dims dims) {
  if (dims.width < 1 || dims.height < 1) throw ParamError("resize target must be non-empty");
  if (dims == plane.dims()) return plane;
  cv::Mat out;
  cv::resize(detail::to_mat(plane), out, cv::Size(dims.width, dims.height), 0, 0, cv::INTER_CUBIC);
  return detail::from_mat(out);
}

Plane rotate_plane(const Plane& plane, double degrees) {
  if (degrees == 0.0) return plane;
  const cv::Point2f center(static_cast<float>((plane.width() - 1) / 2.0),
                           static_cast<float>((plane.height() - 1) / 2.0));
  const cv::Mat rot = cv::getRotationMatrix2D(center, degrees, 1.0);
  cv::Mat out;
  cv::warpAffine(detail::to_mat(plane), out, rot, cv::Size(plane.width(), plane.height()),
                 cv::INTER_CUBIC, cv::BORDER_REPLICATE);
  return detail::from_mat(out);
}

int centered_offset(int outer, int inner) { return (outer - inner) / 2; }

Plane pad_centered(const Plane& plane, Dims dims) {
  if (dims.width < plane.width() || dims.height < plane.height())
    throw DimensionError("padding target smaller than the plane");
  if (dims == plane.dims()) return plane;
  const int left = centered_offset(dims.width, plane.width());
  const int top = centered_offset(dims.height, plane.height());
  cv::Mat out;
  cv::copyMakeBorder(detail::to_mat(plane), out, top, dims.height - plane.height() - top, left,
                     dims.width - plane.width() - left, cv::BORDER_REPLICATE);
  return detail::from_mat(out);
}

}  // namespace textmark
