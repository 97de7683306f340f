#include "textmark/perceptual.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "textmark/errors.hpp"

namespace textmark {

double mannos_sakrison(double f) noexcept {
  return 2.6 * (0.0192 + 0.114 * f) * std::exp(-std::pow(0.114 * f, 1.1));
}

double csf_raw_weight(double radial, const CsfParams& params) noexcept {
  const double a = mannos_sakrison(radial * params.pixels_per_degree);
  const double w = a > 0.0 ? 1.0 / a : params.w_max;
  return std::clamp(w, params.w_min, params.w_max);
}

std::vector<double> csf_weight(const AnnulusSelection& selection, const CsfParams& params) {
  if (selection.positions.empty()) throw EmptySelectionError("no positions to weight");
  std::vector<double> w(selection.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = csf_raw_weight(radial_frequency(selection.positions[i], selection.width, selection.height), params);
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
  for (auto& x : w) x /= mean;
  return w;
}

Plane local_variance(const Plane& plane, int window) {
  if (window < 3 || window % 2 == 0) throw ParamError("variance window must be odd and >= 3");
  const int w = plane.width();
  const int h = plane.height();
  const int r = window / 2;
  // Integral images over the edge-replicated plane.
  const int pw = w + 2 * r;
  const int ph = h + 2 * r;
  std::vector<double> s1(static_cast<std::size_t>(pw + 1) * (ph + 1), 0.0);
  std::vector<double> s2(s1.size(), 0.0);
  // Shift by one sample so flat regions integrate exact zeros.
  const double ref = plane.size() ? plane.at(0, 0) : 0.0;
  for (int y = 0; y < ph; ++y) {
    const int sy = std::clamp(y - r, 0, h - 1);
    double row1 = 0.0;
    double row2 = 0.0;
    for (int x = 0; x < pw; ++x) {
      const double v = plane.at(std::clamp(x - r, 0, w - 1), sy) - ref;
      row1 += v;
      row2 += v * v;
      const std::size_t i = static_cast<std::size_t>(y + 1) * (pw + 1) + (x + 1);
      s1[i] = s1[i - (pw + 1)] + row1;
      s2[i] = s2[i - (pw + 1)] + row2;
    }
  }
  const double n = static_cast<double>(window) * window;
  Plane out(w, h);
  auto box = [&](const std::vector<double>& s, int x, int y) {
    const std::size_t stride = pw + 1;
    const std::size_t x0 = x, y0 = y, x1 = x + window, y1 = y + window;
    return s[y1 * stride + x1] - s[y0 * stride + x1] - s[y1 * stride + x0] + s[y0 * stride + x0];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double mean = box(s1, x, y) / n;
      out.at(x, y) = std::max(0.0, box(s2, x, y) / n - mean * mean);
    }
  }
  return out;
}

Plane compute_variance_mask(const Plane& marked, const MaskParams& params) {
  if (!(params.m_lo >= 0.0 && params.m_lo < params.m_hi && params.m_hi <= 1.0))
    throw ParamError("mask bounds must satisfy 0 <= m_lo < m_hi <= 1");
  if (!(params.variance_saturation > 0.0)) throw ParamError("variance saturation must be positive");
  Plane mask = local_variance(marked, params.window);
  for (auto& v : mask.data())
    v = params.m_lo + (params.m_hi - params.m_lo) * std::min(1.0, v / params.variance_saturation);
  return mask;
}

Plane blend(const Plane& original, const Plane& marked, const Plane& mask) {
  if (original.dims() != marked.dims() || original.dims() != mask.dims())
    throw DimensionError("blend inputs must share dimensions");
  Plane out(original.width(), original.height());
  const auto& y = original.data();
  const auto& yw = marked.data();
  const auto& m = mask.data();
  auto& o = out.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = (1.0 - m[i]) * y[i] + m[i] * yw[i];
  return out;
}

}  // namespace textmark
